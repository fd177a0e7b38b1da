"""Groebner bases over exact coefficient fields, and what they decide.

Buchberger's algorithm with the normal selection strategy (smallest lcm
first) and both classical pair-skipping criteria (coprime leading monomials,
chain criterion). Bases are returned reduced — minimal, monic, tails fully
reduced — so a basis is canonical for (ideal, order) and everything downstream
is deterministic. A step cap bounds the number of S-polynomial reductions;
hitting it raises ResourceExceeded rather than looping forever.

On top of the raw engine: ideal membership and normal forms, elimination
ideals through block orders, kernels of algebra maps between presented
rings, Krull dimension by the maximal-independent-variable-subset search,
and the fraction field of a presented domain, packaged as a coefficient
field so the same polynomial arithmetic can run with generic-point
coefficients.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction

from . import expvec
from .errors import (
    DivisionByZero,
    FieldMismatch,
    ImproperIdeal,
    InternalDisagreement,
    NameCollision,
    NotAHomomorphism,
    ResourceExceeded,
    UnknownVariable,
)
from .fields import FieldElement
from .orders import elimination_order, grevlex_order
from .polynomials import Poly, parse_poly

DEFAULT_STEP_CAP = 100_000


def _monic(f: Poly, order) -> Poly:
    _, c = f.lt(order)
    one = f.field.one()
    if c == one:
        return f
    inv = c.inverse()
    return Poly(f.field, f.vars, {e: v * inv for e, v in f.terms.items()})


def _normal_form_data(f: Poly, data, order) -> Poly:
    """Full reduction of f by data = list of (lm, lc, tail_items)."""
    lms = [d[0] for d in data]
    work = dict(f.terms)
    out = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        i = expvec.find_divisor(lms, m)
        if i < 0:
            out[m] = c
            continue
        lm, lc, tail = data[i]
        u = expvec.exp_sub(m, lm)
        factor = c / lc
        if tail:
            expvec.axpy(work, tail, u, -factor)
    return Poly(f.field, f.vars, out)


def _as_data(basis, order):
    data = []
    for g in basis:
        lm, lc = g.lt(order)
        tail = [(e, c) for e, c in g.terms.items() if e != lm]
        data.append((lm, lc, tail))
    return data


def buchberger(gens, order, step_cap=DEFAULT_STEP_CAP):
    """Reduced Groebner basis of the ideal the generators span."""
    basis = [g for g in gens if g.terms]
    if not basis:
        return ()
    field, vars = basis[0].field, basis[0].vars
    basis = [_monic(g, order) for g in basis]
    lms = [g.lt(order)[0] for g in basis]

    pending = set()
    for i in range(len(basis)):
        for j in range(i):
            pending.add((j, i))

    def lcm_key(pair):
        return order.key(expvec.exp_lcm(lms[pair[0]], lms[pair[1]]))

    steps = 0
    while pending:
        pair = min(pending, key=lambda p: (lcm_key(p), p))
        pending.discard(pair)
        i, j = pair
        li, lj = lms[i], lms[j]
        lcm = expvec.exp_lcm(li, lj)
        if lcm == expvec.exp_add(li, lj):
            continue  # coprime leading monomials
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if expvec.exp_divides(lms[k], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        steps += 1
        if steps > step_cap:
            raise ResourceExceeded(
                "Groebner step cap (%d pair reductions) exceeded" % step_cap
            )
        fi, fj = basis[i], basis[j]
        s = {}
        expvec.axpy(s, list(fi.terms.items()), expvec.exp_sub(lcm, li), field.one())
        expvec.axpy(s, list(fj.terms.items()), expvec.exp_sub(lcm, lj), -field.one())
        spoly = Poly(field, vars, s)
        r = _normal_form_data(spoly, _as_data(basis, order), order)
        if r.terms:
            r = _monic(r, order)
            basis.append(r)
            lms.append(r.lt(order)[0])
            n = len(basis) - 1
            for k in range(n):
                pending.add((k, n))
    return _reduce_basis(basis, order)


def _reduce_basis(basis, order):
    basis = sorted((g for g in basis if g.terms), key=lambda g: order.key(g.lt(order)[0]))
    minimal = []
    min_lms = []
    for g in basis:
        lm = g.lt(order)[0]
        if expvec.find_divisor(min_lms, lm) < 0:
            minimal.append(g)
            min_lms.append(lm)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = _normal_form_data(g, _as_data(others, order), order) if others else g
        reduced.append(_monic(r, order))
    reduced.sort(key=lambda g: order.key(g.lt(order)[0]), reverse=True)
    return tuple(reduced)


class Ideal:
    """An ideal of a polynomial ring, with cached reduced Groebner bases.

    The cache is filled once per order behind a lock; bases are immutable
    tuples afterwards, so concurrent readers are safe.
    """

    def __init__(self, field, vars, gens, step_cap=DEFAULT_STEP_CAP):
        self.field = field
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise NameCollision("repeated variable names in %s" % (self.vars,))
        clean = []
        for g in gens:
            if not isinstance(g, Poly):
                raise TypeError("ideal generators must be Poly, got %r" % (g,))
            if g.field != field or g.vars != self.vars:
                raise FieldMismatch("generator from a different ring")
            if g.terms:
                clean.append(g)
        self.gens = tuple(clean)
        self.step_cap = step_cap
        self._cache = {}
        self._lock = threading.Lock()

    @property
    def default_order(self):
        return grevlex_order(self.vars)

    def groebner(self, order=None):
        order = order or self.default_order
        sig = order.signature
        got = self._cache.get(sig)
        if got is not None:
            return got
        with self._lock:
            got = self._cache.get(sig)
            if got is None:
                got = buchberger(self.gens, order, self.step_cap)
                self._cache[sig] = got
        return got

    def normal_form(self, f: Poly, order=None) -> Poly:
        order = order or self.default_order
        if f.field != self.field or f.vars != self.vars:
            raise FieldMismatch("normal form of a polynomial from a different ring")
        if not f.terms or not self.gens:
            return f
        gb = self.groebner(order)
        return _normal_form_data(f, _as_data(gb, order), order)

    def member(self, f: Poly) -> bool:
        return not self.normal_form(f).terms

    def is_proper(self) -> bool:
        gb = self.groebner()
        return not any(g.is_constant() for g in gb)

    def eliminate(self, keep) -> "Ideal":
        """Generators of the intersection with the subring on keep."""
        keep = tuple(keep)
        for v in keep:
            if v not in self.vars:
                raise UnknownVariable("cannot keep unknown variable %r" % v)
        drop = [v for v in self.vars if v not in keep]
        order = elimination_order(self.vars, drop)
        gb = self.groebner(order)
        drop_idx = [i for i, v in enumerate(self.vars) if v not in keep]
        keep_idx = [i for i, v in enumerate(self.vars) if v in keep]
        kept_vars = tuple(self.vars[i] for i in keep_idx)
        out = []
        for g in gb:
            if all(all(e[i] == 0 for i in drop_idx) for e in g.terms):
                proj = {
                    tuple(e[i] for i in keep_idx): c for e, c in g.terms.items()
                }
                out.append(Poly(self.field, kept_vars, proj))
        return Ideal(self.field, kept_vars, out, self.step_cap)

    def __repr__(self):
        return "Ideal(%s; %d gens)" % (", ".join(self.vars), len(self.gens))


# -- spec-level operation names ---------------------------------------------


def groebner_basis(ideal: Ideal, order=None):
    return ideal.groebner(order)


def normal_form(f: Poly, ideal: Ideal, order=None) -> Poly:
    return ideal.normal_form(f, order)


def member(f: Poly, ideal: Ideal) -> bool:
    return ideal.member(f)


def eliminate(ideal: Ideal, keep_vars) -> Ideal:
    return ideal.eliminate(keep_vars)


def standard_monomials(ideal: Ideal, max_degree: int, order=None):
    """Exponent tuples of monomials of total degree <= max_degree that no
    Groebner leading monomial divides. Under a graded order these represent
    a basis of the quotient's span of low-degree normal forms."""
    order = order or ideal.default_order
    gb = ideal.groebner(order)
    lms = [g.lt(order)[0] for g in gb]
    n = len(ideal.vars)
    out = []
    for total in range(max_degree + 1):
        for e in _exps_of_degree(n, total):
            if expvec.find_divisor(lms, e) < 0:
                out.append(e)
    return out


def _exps_of_degree(n, total):
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _exps_of_degree(n - 1, total - first):
            yield (first,) + rest


class RingPresentation:
    """A finitely presented affine algebra B = field[vars]/(relations).

    Domain-ness is an assumption, recorded and relied on, not verified.
    Properness of the relation ideal is verified at construction.
    """

    def __init__(
        self,
        field,
        vars,
        relations=(),
        assume_domain=True,
        asserted_dimension=None,
        step_cap=DEFAULT_STEP_CAP,
    ):
        self.field = field
        self.vars = tuple(vars)
        if not self.vars:
            raise NameCollision("a presentation needs at least one variable")
        rels = [
            parse_poly(r, self.vars, field) if isinstance(r, str) else r
            for r in relations
        ]
        self.ideal = Ideal(field, self.vars, rels, step_cap)
        self.relations = self.ideal.gens
        self.assume_domain = assume_domain
        self.asserted_dimension = asserted_dimension
        self._dim = None
        if not self.ideal.is_proper():
            raise ImproperIdeal("the relations generate the unit ideal")

    # -- element helpers ---------------------------------------------------

    def parse(self, text: str) -> Poly:
        return self.nf(parse_poly(text, self.vars, self.field))

    def zero(self) -> Poly:
        return Poly.zero(self.field, self.vars)

    def one(self) -> Poly:
        return Poly.constant(self.field, self.vars, 1)

    def const(self, c) -> Poly:
        return Poly.constant(self.field, self.vars, c)

    def gen(self, name: str) -> Poly:
        return Poly.gen(self.field, self.vars, name)

    def gens(self):
        return tuple(self.gen(v) for v in self.vars)

    def nf(self, f: Poly) -> Poly:
        return self.ideal.normal_form(f)

    def is_zero_elem(self, f: Poly) -> bool:
        return not self.nf(f).terms

    def elements_equal(self, f: Poly, g: Poly) -> bool:
        return self.is_zero_elem(f - g)

    # -- invariants ---------------------------------------------------------

    def dimension(self) -> int:
        """Krull dimension: the largest number of variables whose images are
        algebraically independent, found by elimination over variable
        subsets. Exponential in the variable count; guarded beyond 6."""
        if self._dim is not None:
            return self._dim
        m = len(self.vars)
        if not self.ideal.gens:
            dim = m
        else:
            if m > 6 and self.asserted_dimension is None:
                raise ResourceExceeded(
                    "dimension search over %d variables; assert it instead" % m
                )
            dim = 0
            for size in range(m, -1, -1):
                found = False
                for subset in itertools.combinations(self.vars, size):
                    if not self.ideal.eliminate(subset).gens:
                        found = True
                        break
                if found:
                    dim = size
                    break
        if self.asserted_dimension is not None and self.asserted_dimension != dim:
            raise InternalDisagreement(
                "asserted dimension %d but computed %d"
                % (self.asserted_dimension, dim)
            )
        self._dim = dim
        return dim

    def __eq__(self, other):
        return (
            isinstance(other, RingPresentation)
            and self.field == other.field
            and self.vars == other.vars
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.vars, len(self.relations)))

    def __repr__(self):
        rel = "; ".join(str(r) for r in self.relations) or "0"
        return "RingPresentation(%s[%s]/(%s))" % (
            self.field.describe(),
            ", ".join(self.vars),
            rel,
        )

    def describe(self) -> str:
        rel = ", ".join(str(r) for r in self.relations)
        head = "%s[%s]" % (self.field.describe(), ", ".join(self.vars))
        return head if not rel else "%s/(%s)" % (head, rel)


def algebra_map_kernel(source: RingPresentation, images, target_relations: Ideal) -> Ideal:
    """Kernel (pulled back to the source polynomial ring) of the algebra map
    sending the i-th source variable to images[i] in the target ring.

    Checked precondition: the images respect the source relations modulo the
    target relations (NotAHomomorphism otherwise). The result contains the
    source relations; the map on the presented source is injective exactly
    when the result reduces to zero modulo them.
    """
    images = tuple(images)
    if len(images) != len(source.vars):
        raise NotAHomomorphism(
            "need %d images, got %d" % (len(source.vars), len(images))
        )
    field = source.field
    tvars = target_relations.vars
    for im in images:
        if im.field != field:
            raise FieldMismatch("image coefficients live in a different field")
        if im.vars != tvars:
            raise FieldMismatch("images must live in the target ring")

    # the images must define a homomorphism on the quotient
    image_map = dict(zip(source.vars, images))
    for r in source.relations:
        moved = r.map_vars(field, tvars, image_map, lambda c: c)
        if target_relations.normal_form(moved).terms:
            raise NotAHomomorphism(
                "relation %s is not respected by the proposed images" % r
            )

    renamed = _fresh_names(source.vars, tvars)
    allvars = tvars + renamed
    lift_t = {v: Poly.gen(field, allvars, v) for v in tvars}
    lift_s = {
        v: Poly.gen(field, allvars, rv) for v, rv in zip(source.vars, renamed)
    }

    gens = []
    for r in source.relations:
        gens.append(r.map_vars(field, allvars, lift_s, lambda c: c))
    for g in target_relations.gens:
        gens.append(g.map_vars(field, allvars, lift_t, lambda c: c))
    for v, im in zip(source.vars, images):
        moved = im.map_vars(field, allvars, lift_t, lambda c: c)
        gens.append(lift_s[v] - moved)

    big = Ideal(field, allvars, gens, max(source.ideal.step_cap, target_relations.step_cap))
    shadow = big.eliminate(renamed)
    back = {rv: Poly.gen(field, source.vars, v) for v, rv in zip(source.vars, renamed)}
    out = [
        g.map_vars(field, source.vars, back, lambda c: c) for g in shadow.gens
    ]
    return Ideal(field, source.vars, out, source.ideal.step_cap)


def _fresh_names(names, taken):
    out = []
    used = set(taken) | set(names)
    for n in names:
        cand = n + "_src"
        while cand in used:
            cand += "_"
        used.add(cand)
        out.append(cand)
    return tuple(out)


def map_is_injective(source: RingPresentation, images, target_relations: Ideal) -> bool:
    """Whether the presented-source algebra map is injective: the computed
    kernel must lie inside the source relations."""
    ker = algebra_map_kernel(source, images, target_relations)
    return all(source.is_zero_elem(g) for g in ker.gens)


# -- the fraction field of a presented domain -------------------------------


class QFElement:
    """num/den with both in a presented domain; equality by cross products."""

    __slots__ = ("qf", "num", "den")

    def __init__(self, qf, num, den):
        self.qf = qf
        self.num = num
        self.den = den

    def _parts(self, other):
        if isinstance(other, QFElement):
            if other.qf != self.qf:
                raise FieldMismatch("fractions over different rings")
            return other
        try:
            return self.qf.coerce(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._parts(other)
        if o is NotImplemented:
            return NotImplemented
        ring = self.qf.ring
        num = ring.nf(self.num * o.den + o.num * self.den)
        return QFElement(self.qf, num, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QFElement(self.qf, -self.num, self.den)

    def __sub__(self, other):
        o = self._parts(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._parts(other)
        if o is NotImplemented:
            return NotImplemented
        ring = self.qf.ring
        return QFElement(self.qf, ring.nf(self.num * o.num), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self):
        if not self.num.terms:
            raise DivisionByZero("division by zero in the fraction field")
        ring = self.qf.ring
        return QFElement(self.qf, ring.nf(self.den), self.num)

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        o = self._parts(other)
        if o is NotImplemented:
            return NotImplemented
        ring = self.qf.ring
        return ring.is_zero_elem(self.num * o.den - o.num * self.den)

    __hash__ = None

    def __str__(self):
        if self.den.is_constant():
            c = self.den.constant_coefficient()
            num = self.num / c if c != self.num.field.one() else self.num
            return "[%s]" % num
        return "[(%s)/(%s)]" % (self.num, self.den)

    def __repr__(self):
        return str(self)


class QuotientFractionField:
    """Frac(B) for a presented domain B, as a coefficient field.

    Elements are pairs of representatives; zero tests are normal-form
    computations modulo the relations, so they are exact. Domain-ness of B
    is assumed (a zero divisor would surface as a wrong zero test, which is
    exactly what the assumption block warns about).
    """

    def __init__(self, ring: RingPresentation):
        self.ring = ring
        self.characteristic = ring.field.characteristic

    def zero(self):
        return QFElement(self, self.ring.zero(), self.ring.one())

    def one(self):
        return QFElement(self, self.ring.one(), self.ring.one())

    def from_int(self, n):
        return QFElement(self, self.ring.const(n), self.ring.one())

    def from_fraction(self, q):
        q = Fraction(q)
        return QFElement(self, self.ring.const(q), self.ring.one())

    def from_poly(self, f: Poly):
        return QFElement(self, self.ring.nf(f), self.ring.one())

    def coerce(self, x):
        if isinstance(x, QFElement):
            if x.qf != self:
                raise FieldMismatch("fraction from a different ring")
            return x
        if isinstance(x, Poly):
            if x.field != self.ring.field or x.vars != self.ring.vars:
                raise FieldMismatch("polynomial from a different ring")
            return self.from_poly(x)
        if isinstance(x, bool):
            raise TypeError("cannot coerce bool")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, FieldElement):
            return QFElement(self, self.ring.const(x), self.ring.one())
        raise TypeError("cannot coerce %r" % (x,))

    def symbol_or_none(self, name):
        return None

    def describe(self):
        return "Frac(%s)" % self.ring.describe()

    def __eq__(self, other):
        return isinstance(other, QuotientFractionField) and self.ring == other.ring

    def __hash__(self):
        return hash(("qf", self.ring.vars))

    def __repr__(self):
        return self.describe()
