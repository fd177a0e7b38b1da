"""Sparse multivariate polynomials: parsing, arithmetic, derivatives,
substitution, ring maps, exact division, and Jacobian rank."""

import random
from fractions import Fraction

import pytest

from lndkit import (
    BoundConstants,
    Poly,
    extend_field,
    grevlex_order,
    lex_order,
    parse_field_element,
    parse_minpoly,
    parse_poly,
    prime_field,
    rationals,
)
from lndkit.errors import (
    NameCollision,
    PolySyntaxError,
    PositiveCharacteristic,
    UnknownVariable,
)
from lndkit.polynomials import exact_div, jacobian_rank, poly_matrix_rank

Q = rationals()
XY = ("x", "y")


def P(text, vars=XY, field=Q):
    return parse_poly(text, vars, field)


def _random_poly(rng, vars=XY, field=Q, nterms=4, maxdeg=3, cmax=5):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, maxdeg) for _ in vars)
        terms[e] = field.from_int(rng.randint(-cmax, cmax))
    return Poly.from_terms(field, vars, terms)


def test_parser_precedence_and_unary_minus():
    assert P("x + y * x") == P("x") + P("y") * P("x")
    assert P("-x^2") == -(P("x") ** 2)
    assert P("(-x)^2") == P("x") ** 2
    assert P("2*x - (-y)") == P("2*x + y")
    assert P("x - y - y") == P("x - 2*y")


def test_parser_rational_coefficients():
    f = P("3/4*x + 1/2")
    assert f.constant_coefficient() == parse_field_element("1/2", Q)
    assert str(f) == "3/4*x + 1/2"


def test_parser_known_expansion():
    assert str(P("(x + y)^2")) == "x^2 + 2*x*y + y^2"
    assert str(P("(x + y)*(x - y)")) == "x^2 - y^2"
    assert P("(x + y)^2 - (x^2 + 2*x*y + y^2)").is_zero()
    assert P("x*x*x") == P("x^3")


def test_parser_errors():
    with pytest.raises(PolySyntaxError):
        parse_poly("x +", XY, Q)
    with pytest.raises(PolySyntaxError):
        parse_poly("(x", XY, Q)
    with pytest.raises(PolySyntaxError):
        parse_poly("x - -y", XY, Q)
    with pytest.raises(PolySyntaxError):
        parse_poly("w + 1", XY, Q)


def test_parser_rejects_reserved_and_colliding_names():
    K = rationals().with_ratfunc("t")
    with pytest.raises(NameCollision):
        parse_poly("t + 1", ("t", "x"), K)
    with pytest.raises(NameCollision):
        parse_poly("Z^2 + 1", ("Z",), Q)
    with pytest.raises(NameCollision):
        parse_poly("x + x", ("x", "x"), Q)


def test_parse_minpoly_is_the_entry_point_for_Z():
    mp = parse_minpoly("Z^2 + 1", Q)
    assert mp.vars == ("Z",)
    assert mp.degree_in("Z") == 2


def test_constants_from_the_field_tower():
    K = rationals().with_ratfunc("t")
    f = parse_poly("t*x + t^2", ("x",), K)
    assert f.degree_in("x") == 1
    assert f.constant_coefficient() == K.symbol("t") ** 2


def test_bound_constants_parsing():
    bound = BoundConstants(Q, {"lam": Q.from_int(5)})
    f = parse_poly("lam*x + lam^2", ("x",), bound)
    assert f == parse_poly("5*x + 25", ("x",), Q)


def test_ring_axioms_random():
    rng = random.Random(20260817)
    for _ in range(40):
        f, g, h = (_random_poly(rng) for _ in range(3))
        assert f + g == g + f
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == Poly.zero(Q, XY)
        assert f + Poly.zero(Q, XY) == f
        assert f * Poly.constant(Q, XY, 1) == f


def test_pow_matches_repeated_multiplication():
    rng = random.Random(3)
    for _ in range(10):
        f = _random_poly(rng, nterms=3, maxdeg=2)
        acc = Poly.constant(Q, XY, 1)
        for k in range(5):
            assert f ** k == acc
            acc = acc * f


def test_scalar_mixing():
    f = P("x + 1")
    assert 2 * f == P("2*x + 2")
    assert f * Fraction(1, 2) == P("1/2*x + 1/2") or f * Q.from_fraction(
        Fraction(1, 2)
    ) == P("1/2*x + 1/2")


def test_degrees_and_coefficients():
    f = P("x^3*y + 2*x*y^2 - 5")
    assert f.total_degree() == 4
    assert f.degree_in("x") == 3
    assert f.degree_in("y") == 2
    assert f.coeff_of_power("x", 1) == P("2*y^2")
    assert f.coeff_of_power("x", 0) == P("-5")
    assert Poly.zero(Q, XY).total_degree() == -1
    with pytest.raises(UnknownVariable):
        f.degree_in("w")


def test_leading_terms_under_orders():
    f = P("x^2 + x*y^2 + y^3")
    grev = grevlex_order(XY)
    lex = lex_order(XY)
    eg, _ = f.lt(grev)
    el, _ = f.lt(lex)
    assert eg in ((1, 2), (0, 3))
    assert el == (2, 0)


def test_partial_known_and_leibniz():
    f = P("x^3*y^2 + 7*x")
    assert f.partial("x") == P("3*x^2*y^2 + 7")
    assert f.partial("y") == P("2*x^3*y")
    rng = random.Random(12)
    for _ in range(25):
        f, g = _random_poly(rng), _random_poly(rng)
        for v in XY:
            assert (f * g).partial(v) == f.partial(v) * g + f * g.partial(v)


def test_partial_drops_char_p_multiples():
    F = prime_field(3)
    f = parse_poly("x^3 + x^2", ("x",), F)
    assert f.partial("x") == parse_poly("2*x", ("x",), F)


def test_substitute_and_evaluate_agree():
    rng = random.Random(8)
    for _ in range(20):
        f = _random_poly(rng)
        a = Q.from_int(rng.randint(-4, 4))
        b = Q.from_int(rng.randint(-4, 4))
        sub = f.substitute({"x": a, "y": b})
        assert sub.is_constant()
        assert sub.constant_coefficient() == f.evaluate({"x": a, "y": b})


def test_substitute_composition():
    f = P("x^2 + y")
    g = f.substitute({"x": P("x + y")})
    assert g == P("x^2 + 2*x*y + y^2 + y")
    h = f.substitute({"x": P("y"), "y": P("x")})
    assert h == P("y^2 + x")


def test_map_vars_field_change():
    Ki = extend_field(Q, "i", parse_minpoly("Z^2 + 1", Q))
    f = P("x^2 + y^2")
    g = f.map_vars(
        Ki,
        ("p", "q"),
        {
            "x": parse_poly("p", ("p", "q"), Ki),
            "y": parse_poly("i*q", ("p", "q"), Ki),
        },
        Ki.embed,
    )
    assert g == parse_poly("p^2 - q^2", ("p", "q"), Ki)


def test_map_vars_missing_image_only_matters_if_used():
    f = P("x^2")
    g = f.map_vars(Q, ("u",), {"x": parse_poly("u", ("u",), Q)}, lambda c: c)
    assert g == parse_poly("u^2", ("u",), Q)
    with pytest.raises(UnknownVariable):
        P("y").map_vars(Q, ("u",), {"x": parse_poly("u", ("u",), Q)}, lambda c: c)


def test_str_reparse_roundtrip_random():
    rng = random.Random(77)
    K = rationals().with_ratfunc("t")
    for _ in range(30):
        f = _random_poly(rng, vars=("x", "y", "z"), field=Q, nterms=5)
        assert parse_poly(str(f), ("x", "y", "z"), Q) == f
    for _ in range(15):
        t = K.symbol("t")
        f = Poly.from_terms(
            K,
            XY,
            {
                (rng.randint(0, 2), rng.randint(0, 2)): K.from_int(rng.randint(-3, 3))
                * t ** rng.randint(0, 2)
                for _ in range(4)
            },
        )
        assert parse_poly(str(f), XY, K) == f


def test_exact_div():
    f = P("x^2 - y^2")
    g = P("x - y")
    assert exact_div(f, g) == P("x + y")
    assert exact_div(P("x^3*y + x*y"), P("x*y")) == P("x^2 + 1")
    with pytest.raises(ArithmeticError):
        exact_div(P("x^2 + 1"), P("x"))


def test_poly_matrix_rank_known():
    one = Poly.constant(Q, XY, 1)
    zero = Poly.zero(Q, XY)
    x, y = P("x"), P("y")
    assert poly_matrix_rank([[one, zero], [zero, one]]) == 2
    assert poly_matrix_rank([[x, y], [2 * x, 2 * y]]) == 1
    assert poly_matrix_rank([[x, y], [y, x]]) == 2
    assert poly_matrix_rank([]) == 0


def test_jacobian_rank_known():
    x, y = P("x"), P("y")
    assert jacobian_rank([x, y]) == 2
    assert jacobian_rank([x, x * x]) == 1
    assert jacobian_rank([x + y, x - y]) == 2
    assert jacobian_rank([x * y, x * x]) == 2
    assert jacobian_rank([x * y]) == 1
    assert jacobian_rank([]) == 0


def test_jacobian_rank_algebraically_dependent_triple():
    x, y = P("x"), P("y")
    fs = [x + y, x * y, x * x + y * y]
    assert jacobian_rank(fs) == 2


def test_jacobian_rank_rejects_positive_characteristic():
    F = prime_field(2)
    f = parse_poly("x", ("x",), F)
    with pytest.raises(PositiveCharacteristic):
        jacobian_rank([f])
