"""Point classification for the plane conic y^2 + a*x^2 + x = 0 in
characteristic 2.

A point with residue field K embeds into a polynomial ring over K exactly
when K contains a square root of a. Two certificate routes:

* constructed points m_lambda = (relation, (x+lambda)^2 + a): membership
  of (x+lambda)^2 + a in the ideal exhibits x + lambda as a square root
  of a in the residue field, so the point qualifies;
* rational points (coordinates in the base field k): the residue field
  is k itself, so the test is is_square(a) in k.
"""

from __future__ import annotations

from .errors import ImproperIdeal, InputError
from .fields import is_square
from .groebner import Ideal
from .polynomials import Poly, parse_field_element


class ConicForm:
    """The recognized shape: which variable is which, and the coefficient a."""

    __slots__ = ("ring", "xvar", "yvar", "a", "relation")

    def __init__(self, ring, xvar, yvar, a, relation):
        self.ring = ring
        self.xvar = xvar
        self.yvar = yvar
        self.a = a
        self.relation = relation


def conic_form(ring) -> ConicForm:
    """Match the single relation against c*(y^2 + a*x^2 + x); the shape is
    scale-robust (the y^2 and x coefficients must agree)."""
    if ring.field.characteristic != 2:
        raise InputError(
            "the conic classifier needs characteristic 2, got %s"
            % ring.field.characteristic
        )
    if len(ring.vars) != 2:
        raise InputError("the conic classifier needs exactly 2 variables")
    if len(ring.relations) != 1:
        raise InputError("the conic classifier needs exactly 1 relation")
    rel = ring.relations[0]
    zero = ring.field.from_int(0)
    for xv, yv in (ring.vars, tuple(reversed(ring.vars))):
        ix = ring.vars.index(xv)
        iy = ring.vars.index(yv)

        def exps(ex, ey):
            e = [0, 0]
            e[ix] = ex
            e[iy] = ey
            return tuple(e)

        want = {exps(0, 2), exps(2, 0), exps(1, 0)}
        if set(rel.terms) != want:
            continue
        c_y = rel.terms[exps(0, 2)]
        c_a = rel.terms[exps(2, 0)]
        c_x = rel.terms[exps(1, 0)]
        if c_y == c_x and c_a != zero:
            return ConicForm(ring, xv, yv, c_a / c_y, rel)
    raise InputError("the relation is not of the form y^2 + a*x^2 + x")


class LambdaPoint:
    """A constructed point m_lambda with its membership certificate."""

    __slots__ = ("lam", "ideal", "witness", "proper", "member", "in_locus")

    def __init__(self, lam, ideal, witness, proper, member):
        self.lam = lam
        self.ideal = ideal
        self.witness = witness
        self.proper = proper
        self.member = member
        self.in_locus = proper and member

    def describe(self):
        verdict = "in locus" if self.in_locus else "NOT in locus"
        return "lambda = %s: %s (proper: %s, member((x+lambda)^2 + a): %s)" % (
            self.lam,
            verdict,
            "true" if self.proper else "false",
            "true" if self.member else "false",
        )


def classify_lambda(form: ConicForm, lam_text: str) -> LambdaPoint:
    """Build m_lambda = (relation, (x+lambda)^2 + a) and record its
    properness plus the square-root membership certificate."""
    ring = form.ring
    try:
        lam = parse_field_element(lam_text, ring.field)
    except InputError as e:
        raise InputError("bad lambda %r: %s" % (lam_text, e))
    x = ring.gen(form.xvar)
    shifted = x + ring.const(lam)
    witness = shifted * shifted + ring.const(form.a)
    ideal = Ideal(ring.field, ring.vars, [form.relation, witness])
    try:
        proper = ideal.is_proper()
    except ImproperIdeal:
        proper = False
    member = ideal.member(witness)
    return LambdaPoint(lam, ideal, witness, proper, member)


class RationalPointVerdict:
    __slots__ = ("point", "in_locus")

    def __init__(self, point, in_locus):
        self.point = point
        self.in_locus = in_locus

    def describe(self):
        verdict = "in locus" if self.in_locus else "NOT in locus"
        return "%s: %s" % (self.point.describe(), verdict)


def classify_rational(form: ConicForm, point) -> RationalPointVerdict:
    """A point with coordinates in the base field: the residue field is the
    base field, so membership in the locus reduces to is_square(a)."""
    if point.field != form.ring.field:
        raise InputError(
            "rational classification needs coordinates in the base field"
        )
    return RationalPointVerdict(point, is_square(form.a))
