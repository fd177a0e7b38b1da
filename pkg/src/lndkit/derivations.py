"""Derivations of presented affine domains, their nilpotency data, local
slices, the projection onto the kernel along a slice, and exponentials.

A derivation is stored by its values on the ring generators; it acts on a
representative through the partial-derivative expansion and the result is
normal-formed, so well-definedness (checked at construction: the relations
must map into the relation ideal) makes the action on the quotient exact.

Everything here is characteristic zero: exponentials and the projection
divide by factorials.

Local slice search order (deterministic): monomials by total degree 1, 2,
..., search_degree; within a degree, the generator/monomial enumeration
order of the variable tuple. The first s with D(s) != 0 and D(D(s)) == 0
wins.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import (
    DegBoundExceeded,
    NotAHomomorphism,
    NotFound,
    NotWellDefined,
    PositiveCharacteristic,
    ZeroElement,
)
from .groebner import Ideal, RingPresentation, _exps_of_degree
from .polynomials import Poly

DEFAULT_NILPOTENCY_BOUND = 64


class Derivation:
    """A k-derivation of a presented ring, given on generators."""

    def __init__(self, ring: RingPresentation, values, name="D", lnd_status="unknown"):
        self.ring = ring
        self.values = {v: ring.nf(values[v]) for v in ring.vars}
        self.name = name
        self.lnd_status = lnd_status  # "unknown" | "asserted" | ("certified", bound)
        self.nilpotency_witness = None

    def apply(self, f: Poly) -> Poly:
        """D(f) as a normal form; f is a representative in the ring vars."""
        out = self.ring.zero()
        for v in self.ring.vars:
            dv = self.values[v]
            if dv.terms:
                out = out + f.partial(v) * dv
        return self.ring.nf(out)

    def apply_power(self, f: Poly, n: int) -> Poly:
        out = self.ring.nf(f)
        for _ in range(n):
            if not out.terms:
                return out
            out = self.apply(out)
        return out

    def nilpotency_degree(self, f: Poly, bound=DEFAULT_NILPOTENCY_BOUND) -> int:
        """Largest n with D^n(f) != 0, for nonzero f (ZeroElement on zero).

        Finite for locally nilpotent derivations; DegBoundExceeded past the
        bound, which is evidence against an asserted nilpotency."""
        cur = self.ring.nf(f)
        if not cur.terms:
            raise ZeroElement("nilpotency degree of zero is undefined")
        n = 0
        while True:
            cur = self.apply(cur)
            if not cur.terms:
                return n
            n += 1
            if n > bound:
                raise DegBoundExceeded(
                    "%s failed to annihilate the element within %d steps"
                    % (self.name, bound)
                )

    def is_lnd_ready(self) -> bool:
        return self.lnd_status == "asserted" or (
            isinstance(self.lnd_status, tuple) and self.lnd_status[0] == "certified"
        )

    def __repr__(self):
        vals = ", ".join("%s->%s" % (v, self.values[v]) for v in self.ring.vars)
        return "Derivation(%s: %s)" % (self.name, vals)


def check_derivation(ring: RingPresentation, values, name="D") -> Derivation:
    """Build a derivation after verifying it descends to the quotient.

    values: dict from every generator name to a Poly (or parseable text).
    The relations must map into the relation ideal (NotWellDefined else).
    """
    if ring.field.characteristic != 0:
        raise PositiveCharacteristic(
            "derivations are supported in characteristic zero only"
        )
    vals = {}
    for v in ring.vars:
        if v not in values:
            raise NotWellDefined("no value for generator %r" % v)
        val = values[v]
        if isinstance(val, str):
            val = ring.parse(val)
        vals[v] = val
    extra = set(values) - set(ring.vars)
    if extra:
        raise NotWellDefined("values for unknown generators: %s" % sorted(extra))
    d = Derivation(ring, vals, name)
    for r in ring.relations:
        img = ring.zero()
        for v in ring.vars:
            img = img + r.partial(v) * vals[v]
        if not ring.is_zero_elem(img):
            raise NotWellDefined(
                "%s does not descend: relation %s maps to %s"
                % (name, r, ring.nf(img))
            )
    return d


def certify_lnd(D: Derivation, bound=DEFAULT_NILPOTENCY_BOUND):
    """Witness local nilpotency on the generators up to the bound.

    Returns the witness dict {generator: least n with D^n(gen) = 0} and
    marks the derivation certified. Suffices for local nilpotency on the
    whole ring since the generators generate. DegBoundExceeded if some
    generator survives past the bound."""
    witness = {}
    for v in D.ring.vars:
        cur = D.ring.gen(v)
        n = 0
        while cur.terms:
            cur = D.apply(cur)
            n += 1
            if n > bound:
                raise DegBoundExceeded(
                    "%s^%d(%s) is still nonzero; not certified within bound %d"
                    % (D.name, n, v, bound)
                )
        witness[v] = n
    D.lnd_status = ("certified", bound)
    D.nilpotency_witness = witness
    return witness


class LocalSlice:
    """s with D(s) != 0 and D(D(s)) = 0; a = D(s) sits in the kernel."""

    __slots__ = ("s", "a")

    def __init__(self, s: Poly, a: Poly):
        self.s = s
        self.a = a

    def __repr__(self):
        return "LocalSlice(s=%s, a=%s)" % (self.s, self.a)


def find_local_slice(D: Derivation, search_degree=3) -> LocalSlice:
    """First monomial slice in the documented deterministic order."""
    ring = D.ring
    n = len(ring.vars)
    for total in range(1, search_degree + 1):
        for e in _exps_of_degree(n, total):
            cand = Poly(ring.field, ring.vars, {e: ring.field.one()})
            ds = D.apply(cand)
            if not ds.terms:
                continue
            if not D.apply(ds).terms:
                return LocalSlice(ring.nf(cand), ds)
    raise NotFound(
        "no monomial local slice of degree <= %d for %s" % (search_degree, D.name)
    )


def dixmier_project(D: Derivation, sl: LocalSlice, b: Poly, bound=DEFAULT_NILPOTENCY_BOUND):
    """Project onto the kernel along the slice, in the localization at a.

    Returns (numerator, k) representing numerator / a^k where a = D(s):
    the alternating sum over n of D^n(b) s^n a^(k-n) / n!. The result is
    killed by D and acts as the identity on kernel elements.
    """
    ring = D.ring
    bnf = ring.nf(b)
    if not bnf.terms:
        return ring.zero(), 0
    k = D.nilpotency_degree(bnf, bound)
    acc = ring.zero()
    cur = bnf
    s_pow = ring.one()
    for n in range(k + 1):
        coeff = Fraction((-1) ** n, factorial(n))
        a_pow = sl.a ** (k - n)
        acc = acc + cur * s_pow * a_pow * coeff
        cur = D.apply(cur)
        s_pow = s_pow * sl.s
    return ring.nf(acc), k


class ExpMap:
    """The exponential of a locally nilpotent derivation.

    Scalar form: an automorphism of the ring, images in the ring itself.
    Formal form: images in the ring with one extra polynomial variable (the
    parameter), reduced modulo the lifted relations.
    """

    def __init__(self, derivation, parameter, ring_ext, ideal_ext, images):
        self.derivation = derivation
        self.parameter = parameter  # FieldElement, or the formal variable name
        self.ring_ext = ring_ext  # variable tuple of the image ring
        self.ideal_ext = ideal_ext  # Ideal over ring_ext (lifted relations)
        self.images = images  # generator name -> Poly over ring_ext

    def apply_taylor(self, f: Poly, bound=DEFAULT_NILPOTENCY_BOUND) -> Poly:
        """Sum of D^n(f)/n! times the n-th parameter power: the definition."""
        D = self.derivation
        ring = D.ring
        field = ring.field
        lam = self.parameter
        formal = isinstance(lam, str)
        cur = ring.nf(f)
        acc = Poly.zero(field, self.ring_ext)
        n = 0
        while cur.terms:
            if formal:
                lifted = _lift(cur, self.ring_ext)
                tvar = Poly.gen(field, self.ring_ext, lam)
                part = lifted * tvar ** n
            else:
                part = _lift(cur * (lam ** n), self.ring_ext)
            acc = acc + part * Fraction(1, factorial(n))
            cur = D.apply(cur)
            n += 1
            if n > bound:
                raise DegBoundExceeded(
                    "exponential of %s did not terminate within %d terms"
                    % (D.name, bound)
                )
        return self.ideal_ext.normal_form(acc)

    def apply(self, f: Poly) -> Poly:
        """Apply as the ring homomorphism determined by the images."""
        mapping = dict(self.images)
        out = f.map_vars(f.field, self.ring_ext, mapping, lambda c: c)
        return self.ideal_ext.normal_form(out)

    def __repr__(self):
        par = self.parameter if isinstance(self.parameter, str) else str(self.parameter)
        return "ExpMap(%s, %s)" % (self.derivation.name, par)


def _lift(f: Poly, new_vars) -> Poly:
    """Reinterpret over a variable superset (old vars a prefix subset)."""
    if f.vars == tuple(new_vars):
        return f
    images = {v: Poly.gen(f.field, new_vars, v) for v in f.vars}
    return f.map_vars(f.field, new_vars, images, lambda c: c)


def exp_map(D: Derivation, scalar_or_formal="T", bound=DEFAULT_NILPOTENCY_BOUND) -> ExpMap:
    """Exponential automorphism of a locally nilpotent derivation.

    scalar_or_formal: a field element for a concrete automorphism, or a
    variable name for the formal one-parameter version. The generator
    images are checked to respect the relations (NotAHomomorphism guards
    against a non-nilpotent or ill-formed input slipping through).
    """
    ring = D.ring
    if ring.field.characteristic != 0:
        raise PositiveCharacteristic("exponentials need characteristic zero")
    if isinstance(scalar_or_formal, str):
        tname = scalar_or_formal
        taken = set(ring.vars) | set(getattr(ring.field, "constant_names", tuple)())
        while tname in taken or tname == "Z":
            tname += "_"
        ring_ext = ring.vars + (tname,)
        lifted_rels = [_lift(r, ring_ext) for r in ring.relations]
        ideal_ext = Ideal(ring.field, ring_ext, lifted_rels, ring.ideal.step_cap)
        parameter = tname
    else:
        ring_ext = ring.vars
        ideal_ext = ring.ideal
        parameter = ring.field.coerce(scalar_or_formal)

    shell = ExpMap(D, parameter, ring_ext, ideal_ext, {})
    images = {}
    for v in ring.vars:
        images[v] = shell.apply_taylor(ring.gen(v), bound)
    shell.images = images

    for r in ring.relations:
        moved = r.map_vars(ring.field, ring_ext, images, lambda c: c)
        if ideal_ext.normal_form(moved).terms:
            raise NotAHomomorphism(
                "exponential images of %s do not respect %s" % (D.name, r)
            )
    return shell
