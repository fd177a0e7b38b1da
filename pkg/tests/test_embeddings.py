"""Iterated-exponential embeddings, point specialization, injectivity
tests, the open-locus certificate, linear reduction of outer variables,
and point sampling.

Hand-computed oracle for the surface x*y + z^2 + 1 with
D1: (0, -2z, x) and D2: (-2z, 0, y), outer variables X1 then X2; the
coefficient of X1^i X2^j in the image of g is D2^j(D1^i(g)) / (i! j!):

  x -> x - 2*X2*z - X2^2*y
  y -> y - 2*X1*z - 2*X1*X2*y - X1^2*x + 2*X1^2*X2*z + X1^2*X2^2*y
  z -> z + X1*x + X2*y - 2*X1*X2*z - X1*X2^2*y

At the base point (1, -1, 0) these specialize to
(1 + X2^2, -1 + 2*X1*X2 - X1^2 - X1^2*X2^2, X1 - X2 + X1*X2^2)."""

import random

import pytest

from lndkit import (
    PointFamily,
    PointSpec,
    Poly,
    RingPresentation,
    certify_lnd,
    certify_open_locus,
    check_derivation,
    closed_form_image,
    exponential_embedding,
    extend_field,
    generic_injectivity,
    generic_specialization,
    injectivity_test,
    parse_minpoly,
    parse_poly,
    prime_field,
    rationals,
    reduce_target_vars,
    sample_and_test,
    specialize,
)
from lndkit.errors import (
    InputError,
    InvalidPoint,
    OracleDisagreement,
    ReductionFailed,
)

Q = rationals()


@pytest.fixture
def surface_embedding(danielewski):
    ring, d1, d2 = danielewski
    return ring, exponential_embedding(ring, (d1, d2))


def test_embedding_images_match_hand_formula(surface_embedding):
    ring, emb = surface_embedding
    assert emb.tvars == ("X1", "X2")
    av = emb.all_vars
    assert emb.images["x"] == parse_poly("x - 2*X2*z - X2^2*y", av, Q)
    assert emb.images["y"] == parse_poly(
        "y - 2*X1*z - 2*X1*X2*y - X1^2*x + 2*X1^2*X2*z + X1^2*X2^2*y", av, Q
    )
    assert emb.images["z"] == parse_poly(
        "z + X1*x + X2*y - 2*X1*X2*z - X1*X2^2*y", av, Q
    )


def test_embedding_respects_relation(surface_embedding):
    ring, emb = surface_embedding
    rel = parse_poly("x*y + z^2 + 1", ring.vars, Q)
    assert emb.map_poly(rel).is_zero()


def test_closed_form_agrees_on_arbitrary_elements(surface_embedding):
    ring, emb = surface_embedding
    rng = random.Random(20260817)
    for _ in range(6):
        terms = {
            tuple(rng.randint(0, 2) for _ in ring.vars): Q.from_int(
                rng.randint(-3, 3)
            )
            for _ in range(3)
        }
        b = ring.nf(Poly.from_terms(Q, ring.vars, terms))
        direct = closed_form_image(ring, emb.sequence, emb.tvars, b)
        assert emb.ideal_ext.normal_form(direct - emb.map_poly(b)).is_zero()


def test_outer_zero_section_recovers_generators(surface_embedding):
    """Substituting every outer variable with 0 undoes the embedding."""
    ring, emb = surface_embedding
    for v in ring.vars:
        collapsed = emb.images[v].substitute(
            {X: Poly.zero(Q, emb.all_vars) for X in emb.tvars}
        )
        lifted_gen = parse_poly(v, emb.all_vars, Q)
        assert collapsed == lifted_gen


def test_specialization_at_base_point(surface_embedding):
    ring, emb = surface_embedding
    pt = PointSpec(ring, Q, {"x": 1, "y": -1, "z": 0}, label="base")
    sm = specialize(emb, pt)
    tv = emb.tvars
    assert sm.images[0] == parse_poly("1 + X2^2", tv, Q)
    assert sm.images[1] == parse_poly(
        "-1 + 2*X1*X2 - X1^2 - X1^2*X2^2", tv, Q
    )
    assert sm.images[2] == parse_poly("X1 - X2 + X1*X2^2", tv, Q)


def test_specialized_constant_terms_are_the_point(surface_embedding):
    """The outer zero section of a specialization recovers the point."""
    ring, emb = surface_embedding
    rng = random.Random(4)
    fam = PointFamily(
        ring,
        Q,
        ("c", "s"),
        {"x": "c", "z": "s", "y": "-(s^2 + 1)/c"},
        label="rational-slice",
    )
    for _ in range(5):
        pt = fam.sample(rng)
        sm = specialize(emb, pt)
        for v, img in zip(ring.vars, sm.images):
            assert img.constant_coefficient() == pt.coords[v]


def test_generic_specialization_is_injective(surface_embedding):
    ring, emb = surface_embedding
    qf, images = generic_specialization(emb)
    assert qf.describe() == "Frac(Q[x, y, z]/(x*y + z^2 + 1))"
    verdict = generic_injectivity(emb, method="jacobian")
    assert verdict.injective
    assert verdict.rank == 2
    assert verdict.required_rank == 2


def test_injectivity_methods_agree_on_sampled_points(surface_embedding):
    ring, emb = surface_embedding
    rng = random.Random(77)
    fam = PointFamily(
        ring,
        Q,
        ("c", "s"),
        {"x": "c", "z": "s", "y": "-(s^2 + 1)/c"},
    )
    for _ in range(8):
        pt = fam.sample(rng)
        sm = specialize(emb, pt)
        vj = injectivity_test(sm.images, ring, method="jacobian")
        ve = injectivity_test(sm.images, ring, method="elimination")
        vb = injectivity_test(sm.images, ring, method="both")
        assert vj.injective == ve.injective == vb.injective


def test_non_injective_specialization_detected():
    """One translation on the plane: at any point the image is a single
    line, so the specialized map drops a coordinate and fails."""
    ring = RingPresentation(Q, ("x", "y"))
    dx = check_derivation(ring, {"x": "1", "y": "0"}, name="Dx")
    certify_lnd(dx)
    emb = exponential_embedding(ring, (dx,))
    pt = PointSpec(ring, Q, {"x": 0, "y": 0})
    sm = specialize(emb, pt)
    vj = injectivity_test(sm.images, ring, method="jacobian")
    ve = injectivity_test(sm.images, ring, method="elimination")
    assert not vj.injective
    assert vj.rank == 1
    assert vj.required_rank == 2
    assert not ve.injective
    assert ve.kernel_gens
    vb = injectivity_test(sm.images, ring, method="both")
    assert not vb.injective


def test_generic_failure_for_short_sequence(danielewski):
    """D1 alone cannot dominate the two-dimensional surface."""
    ring, d1, _ = danielewski
    emb = exponential_embedding(ring, (d1,))
    verdict = generic_injectivity(emb)
    assert not verdict.injective
    assert verdict.rank == 1
    assert verdict.required_rank == 2


def test_certificate_contents(surface_embedding):
    ring, emb = surface_embedding
    cert = certify_open_locus(emb)
    by_var = {vc.var: vc for vc in cert.per_variable}
    assert set(by_var) == {"X1", "X2"}
    assert by_var["X1"].annihilator_degree == 2
    assert by_var["X2"].annihilator_degree == 2
    assert [str(g) for g in by_var["X1"].ideal_gens] == ["-2*z", "-y", "x"]
    assert [str(g) for g in by_var["X2"].ideal_gens] == ["y"]
    prods = cert.product_generators()
    assert [str(p) for p in prods] == ["-2*y*z", "-y^2", "-z^2 - 1"]


def test_certificate_covers_good_points_not_bad(surface_embedding):
    ring, emb = surface_embedding
    cert = certify_open_locus(emb)
    good = PointSpec(ring, Q, {"x": 1, "y": -1, "z": 0})
    assert cert.covers(good)
    Ki = extend_field(Q, "i", parse_minpoly("Z^2 + 1", Q))
    bad = PointSpec(ring, Ki, {"x": 5, "y": 0, "z": Ki.symbol("i")})
    assert not cert.covers(bad)


def test_certificate_requires_square_shape(danielewski):
    ring, d1, _ = danielewski
    emb = exponential_embedding(ring, (d1,))
    with pytest.raises(InputError):
        certify_open_locus(emb)


def test_certificate_point_agreement_randomized(surface_embedding):
    """Covered sampled points must all test injective (the soundness claim
    behind the certificate); sample_and_test enforces it internally."""
    ring, emb = surface_embedding
    cert = certify_open_locus(emb)
    rng = random.Random(13)
    fam = PointFamily(
        ring,
        Q,
        ("c", "s"),
        {"x": "c", "z": "s", "y": "-(s^2 + 1)/c"},
    )
    pts = [fam.sample(rng) for _ in range(6)]
    results = sample_and_test(emb, pts, method="both", certificate=cert)
    assert len(results) == 6
    for res in results:
        if res.certificate_covered:
            assert res.verdict.injective
        assert len(res.images) == len(ring.vars)


def test_reduce_target_vars_plane():
    ring = RingPresentation(Q, ("x", "y"))
    dx = check_derivation(ring, {"x": "1", "y": "0"}, name="Dx")
    dy = check_derivation(ring, {"x": "0", "y": "1"}, name="Dy")
    certify_lnd(dx)
    certify_lnd(dy)
    emb = exponential_embedding(ring, (dx, dy, dx))
    assert len(emb.tvars) == 3
    red = reduce_target_vars(emb, 2, rng=random.Random(0))
    assert len(red.tvars) == 2
    assert generic_injectivity(red).injective
    kind, mat, parent = red.provenance
    assert kind == "linear_reduction"
    assert parent is emb
    assert len(mat) == 3 and all(len(row) == 2 for row in mat)
    assert red.images["x"].substitute(
        {Y: Poly.zero(Q, red.all_vars) for Y in red.tvars}
    ) == parse_poly("x", red.all_vars, Q)


def test_reduce_target_vars_refuses_impossible():
    ring = RingPresentation(Q, ("x", "y"))
    dx = check_derivation(ring, {"x": "1", "y": "0"}, name="Dx")
    certify_lnd(dx)
    emb = exponential_embedding(ring, (dx,))
    with pytest.raises(InputError):
        reduce_target_vars(emb, 2)
    with pytest.raises(ReductionFailed):
        reduce_target_vars(emb, 0, trials=4)


def test_point_validation(danielewski):
    ring, _, _ = danielewski
    with pytest.raises(InvalidPoint):
        PointSpec(ring, Q, {"x": 1, "y": 1, "z": 0})
    with pytest.raises(InvalidPoint):
        PointSpec(ring, Q, {"x": 1, "y": -1})
    with pytest.raises(InvalidPoint):
        PointSpec(ring, Q, {"x": 1, "y": -1, "z": 0, "w": 0})
    with pytest.raises(InvalidPoint):
        PointSpec(ring, prime_field(5), {"x": 1, "y": -1, "z": 0})


def test_point_over_extension_tower(gaussian_quadric):
    """A non-rational point of the Gaussian quadric over the tower
    Q[i](u)[v: Z^2 + u^2 + 1]: the relation vanishes identically because
    2*(u^2 + v^2 + 1) = 0 there."""
    ring, d1, d2 = gaussian_quadric
    Ku = ring.field.with_ratfunc("u")
    Kuv = extend_field(Ku, "v", parse_minpoly("Z^2 + u^2 + 1", Ku))
    u = Kuv.symbol("u")
    v = Kuv.symbol("v")
    pt = PointSpec(ring, Kuv, {"x": u + v, "y": u - v, "z": Kuv.one()})
    emb = exponential_embedding(ring, (d1, d2))
    sm = specialize(emb, pt)
    verdict = injectivity_test(sm.images, ring, method="both")
    assert verdict.injective
    for vname, img in zip(ring.vars, sm.images):
        assert img.constant_coefficient() == pt.coords[vname]


def test_family_sampling_determinism_and_distinctness():
    ring = RingPresentation(Q, ("x", "y"))
    fam = PointFamily(ring, Q, ("a",), {"x": "a", "y": "a^2"}, label="parab")
    p1 = fam.sample(random.Random(5))
    p2 = fam.sample(random.Random(5))
    assert str(p1.coords["x"]) == str(p2.coords["x"])
    pts = fam.sample_distinct(random.Random(5), 4)
    keys = {str(p.coords["x"]) for p in pts}
    assert len(keys) == 4


def test_family_distinct_exhaustion_on_small_field():
    """Over GF(2)(t) the draw space for one parameter has four elements,
    so asking for five distinct points must fail cleanly."""
    K = prime_field(2).with_ratfunc("t")
    ring = RingPresentation(K, ("X", "Y"), ["Y^2 + t*X^2 + X"], assume_domain=True)
    fam = PointFamily(
        ring,
        K,
        ("u",),
        {"X": "1/(u^2 + t)", "Y": "u/(u^2 + t)"},
        label="rational-conic",
    )
    got = fam.sample_distinct(random.Random(0), 4)
    assert len(got) == 4
    with pytest.raises(InputError):
        fam.sample_distinct(random.Random(0), 5)


def test_family_requires_all_coordinates():
    ring = RingPresentation(Q, ("x", "y"))
    with pytest.raises(InputError):
        PointFamily(ring, Q, ("a",), {"x": "a"})
