"""Bundled example manifests.

Each fixture is complete: the `example` command prints one verbatim, and
every other command accepts a fixture name in place of a manifest path.
"""

DANIELEWSKI = b'''# Danielewski surface x*y + z^2 + 1 = 0 with its two standard
# locally nilpotent derivations.

[field]
base = "Q"

[ring]
vars = ["x", "y", "z"]
relations = ["x*y + z^2 + 1"]

[ring.assert]
domain = true
dimension = 2

[derivations.D1]
x = "0"
y = "-2*z"
z = "x"
lnd = "certify"

[derivations.D2]
x = "-2*z"
y = "0"
z = "y"
lnd = "certify"

[[points]]
label = "base"
x = "1"
y = "-1"
z = "0"

[[families]]
label = "rational-slice"
parameters = ["c", "s"]
x = "c"
z = "s"
y = "-(s^2 + 1)/c"

[run]
command = "pipeline"
seed = 0
assume_trivial_kernel_field = true
'''

CHAR2_CONIC = b'''# Conic Y^2 + t*X^2 + X = 0 over GF(2)(t). No derivation theory
# applies in characteristic 2; the xk-conic command classifies points
# by the square-root criterion instead.

[field]
base = 2
ratfunc = ["t"]

[ring]
vars = ["X", "Y"]
relations = ["Y^2 + t*X^2 + X"]

[ring.assert]
domain = true
dimension = 1

[[families]]
label = "rational-conic"
parameters = ["u"]
X = "1/(u^2 + t)"
Y = "u/(u^2 + t)"

[run]
command = "xk-conic"
seed = 0
lambdas = ["0", "1", "t"]
samples_per_family = 3
'''

QUADRIC_QI = b'''# Quadric x^2 + y^2 + z^2 + 1 = 0 over Q(i). Writing p = x + i*y and
# q = x - i*y turns the relation into p*q + z^2 + 1, so the two standard
# derivations transport to the coordinates below.

[field]
base = "Q"

[[field.extensions]]
name = "i"
minpoly = "Z^2 + 1"

[ring]
vars = ["x", "y", "z"]
relations = ["x^2 + y^2 + z^2 + 1"]

[ring.assert]
domain = true
dimension = 2

[derivations.D1]
x = "-z"
y = "-i*z"
z = "x + i*y"
lnd = "certify"

[derivations.D2]
x = "-z"
y = "i*z"
z = "x - i*y"
lnd = "certify"

[[points]]
label = "gaussian"
x = "i"
y = "0"
z = "0"

[[families]]
label = "chord"
parameters = ["a", "b"]
x = "(a - (b^2 + 1)/a)/2"
y = "-i*(a + (b^2 + 1)/a)/2"
z = "b"

[run]
command = "pipeline"
seed = 0
assume_trivial_kernel_field = true
'''

AFFINE_PLANE = b'''# The coordinate ring Q[x, y] of the plane with the two partial
# derivatives; the embedding is a pair of translations.

[field]
base = "Q"

[ring]
vars = ["x", "y"]
relations = []

[ring.assert]
domain = true
dimension = 2

[derivations.Dx]
x = "1"
y = "0"

[derivations.Dy]
x = "0"
y = "1"

[[points]]
label = "origin"
x = "0"
y = "0"

[[points]]
x = "2"
y = "-3"

[[families]]
label = "lattice"
parameters = ["c", "s"]
x = "c"
y = "s"

[run]
command = "pipeline"
seed = 0
assume_trivial_kernel_field = true
'''

FIXTURES = {
    "danielewski": DANIELEWSKI,
    "char2-conic": CHAR2_CONIC,
    "quadric-qi": QUADRIC_QI,
    "affine-plane": AFFINE_PLANE,
}


def fixture_names():
    return tuple(FIXTURES)


def fixture_bytes(name: str) -> bytes:
    return FIXTURES[name]
