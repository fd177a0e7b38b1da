"""Build script: compiles the optional exponent-vector kernel.

The package is pure Python plus one optional Cython extension. If Cython or a
C compiler is unavailable the build silently skips the extension and the
runtime falls back to the twin pure-Python module.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    # never let a failed kernel build break the install
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print("skipping compiled kernel: %s" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print("skipping compiled kernel %s: %s" % (ext.name, exc))


def _extensions():
    if os.environ.get("LNDKIT_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("lndkit._expvec", ["src/lndkit/_expvec.pyx"])
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions(), cmdclass={"build_ext": _OptionalBuildExt})
