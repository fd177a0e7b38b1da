"""Exponent-vector kernel selection.

Imports the compiled Cython module when it is available, the pure-Python twin
otherwise. Set LNDKIT_PURE=1 to force the fallback (used by the benchmark to
compare backends).
"""

import os

if os.environ.get("LNDKIT_PURE"):
    from . import _expvec_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _expvec as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _expvec_py as _impl

        BACKEND = "python"

exp_add = _impl.exp_add
exp_sub = _impl.exp_sub
exp_divides = _impl.exp_divides
exp_lcm = _impl.exp_lcm
exp_deg = _impl.exp_deg
find_divisor = _impl.find_divisor
axpy = _impl.axpy
