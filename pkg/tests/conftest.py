import pytest

from lndkit import (
    RingPresentation,
    check_derivation,
    certify_lnd,
    extend_field,
    parse_minpoly,
    prime_field,
    rationals,
)


def build_danielewski():
    """The surface x*y + z^2 + 1 = 0 over Q with its two derivations."""
    ring = RingPresentation(
        rationals(),
        ("x", "y", "z"),
        ["x*y + z^2 + 1"],
        assume_domain=True,
        asserted_dimension=2,
    )
    d1 = check_derivation(ring, {"x": "0", "y": "-2*z", "z": "x"}, name="D1")
    d2 = check_derivation(ring, {"x": "-2*z", "y": "0", "z": "y"}, name="D2")
    certify_lnd(d1)
    certify_lnd(d2)
    return ring, d1, d2


def build_affine_plane():
    ring = RingPresentation(
        rationals(), ("x", "y"), [], assume_domain=True, asserted_dimension=2
    )
    dx = check_derivation(ring, {"x": "1", "y": "0"}, name="Dx")
    dy = check_derivation(ring, {"x": "0", "y": "1"}, name="Dy")
    certify_lnd(dx)
    certify_lnd(dy)
    return ring, dx, dy


def build_gaussian_quadric():
    """x^2 + y^2 + z^2 + 1 = 0 over Q(i) with its two derivations."""
    field = extend_field(rationals(), "i", parse_minpoly("Z^2 + 1", rationals()))
    ring = RingPresentation(
        field,
        ("x", "y", "z"),
        ["x^2 + y^2 + z^2 + 1"],
        assume_domain=True,
        asserted_dimension=2,
    )
    d1 = check_derivation(
        ring, {"x": "-z", "y": "-i*z", "z": "x + i*y"}, name="D1"
    )
    d2 = check_derivation(
        ring, {"x": "-z", "y": "i*z", "z": "x - i*y"}, name="D2"
    )
    certify_lnd(d1)
    certify_lnd(d2)
    return ring, d1, d2


def build_char2_conic():
    field = prime_field(2).with_ratfunc("t")
    ring = RingPresentation(
        field,
        ("X", "Y"),
        ["Y^2 + t*X^2 + X"],
        assume_domain=True,
        asserted_dimension=1,
    )
    return ring


@pytest.fixture
def danielewski():
    return build_danielewski()


@pytest.fixture
def affine_plane():
    return build_affine_plane()


@pytest.fixture
def gaussian_quadric():
    return build_gaussian_quadric()
