"""Embeddings of a presented domain into polynomial rings via iterated
exponentials of locally nilpotent derivations, together with the tooling
that turns them into checkable statements: specialization at points,
injectivity tests by two independent routes, a certificate describing an
explicit open set of injective specializations, and linear reduction of
the number of outer variables.

The embedding sends a ring element b to the polynomial whose coefficient
of X_1^{i_1} * ... * X_N^{i_N} is

    D_N^{i_N}( ... D_1^{i_1}(b) ... ) / (i_1! * ... * i_N!),

equivalently the composite of the one-parameter exponentials, the first
derivation in the sequence acting innermost. Images are normal forms in
the source ring with the outer variables adjoined, so equality there is
decidable.

Open-locus certificate, soundness sketch. Write J for the kernel of
k[x, w, X] ->> B[X] sending x to generators, w_i to the image of the i-th
generator, X to X; J is generated by the source relations together with
(w_i - image_i) and is prime because B[X] is a domain. For a fixed outer
variable X_j, eliminating the other outer variables from J leaves the
ideal E_j of relations in (x, w, X_j) alone. Substituting w_i -> image_i
coefficient-wise in X_j (formally: the ring map x -> x, w -> images,
X_j -> fresh T) kills the full diagonal evaluation of any member of E_j
but not each member: when the generic embedding has full Jacobian rank,
X_j is algebraic over the field generated by the generic images, and its
cleared minimal polynomial lies in E_j (J is prime, hence radical) with
a leading coefficient that survives the substitution. Since the
substitution is a ring homomorphism and the Groebner elements generate
E_j, at least one Groebner element survives it; its top surviving
X_j-coefficient is a nonzero element of B[X], and the ideal I_j of B
spanned by that element's X-monomial coefficients is nonzero. At a point
m of the source where no I_j is contained in the corresponding maximal
ideal, every X_j stays algebraic over the specialized image algebra, so
that algebra has full transcendence degree; the specialized map from the
domain B then has zero kernel. A surviving element must involve X_j:
were its substituted form X_j-free and nonzero, the diagonal evaluation
could not vanish.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial

from .errors import (
    DegBoundExceeded,
    FieldMismatch,
    InputError,
    InternalDisagreement,
    InvalidPoint,
    OracleDisagreement,
    PositiveCharacteristic,
    ReductionFailed,
)
from .groebner import (
    Ideal,
    QuotientFractionField,
    RingPresentation,
    algebra_map_kernel,
)
from .polynomials import (
    BoundConstants,
    Poly,
    jacobian_rank,
    parse_field_element,
)

DEFAULT_EXP_BOUND = 64


def fresh_names(prefix, count, taken):
    """prefix1..prefixN, suffixed with underscores past any collision."""
    out = []
    seen = set(taken)
    for i in range(1, count + 1):
        cand = "%s%d" % (prefix, i)
        while cand in seen or cand == "Z":
            cand += "_"
        seen.add(cand)
        out.append(cand)
    return tuple(out)


def _lift(f: Poly, new_vars) -> Poly:
    if f.vars == tuple(new_vars):
        return f
    images = {v: Poly.gen(f.field, new_vars, v) for v in f.vars}
    return f.map_vars(f.field, new_vars, images, lambda c: c)


def _scalar_embedding(kappa, base_field):
    """Coefficient map base_field -> kappa for the supported targets."""
    if kappa is base_field or kappa == base_field:
        return lambda c: c
    if isinstance(kappa, QuotientFractionField):
        return kappa.coerce
    return kappa.embed


class Embedding:
    """An algebra map from a presented ring into itself with outer
    polynomial variables adjoined, stored by generator images.

    provenance records how it arose: ("exp_sequence", derivation names)
    or ("linear_reduction", integer matrix, parent embedding).
    """

    def __init__(self, ring: RingPresentation, tvars, images, provenance, sequence=None):
        self.ring = ring
        self.tvars = tuple(tvars)
        self.all_vars = ring.vars + self.tvars
        lifted = [_lift(r, self.all_vars) for r in ring.relations]
        self.ideal_ext = Ideal(ring.field, self.all_vars, lifted, ring.ideal.step_cap)
        self.images = {v: self.ideal_ext.normal_form(images[v]) for v in ring.vars}
        self.provenance = provenance
        self.sequence = sequence

    def image_tuple(self):
        return tuple(self.images[v] for v in self.ring.vars)

    def map_poly(self, f: Poly) -> Poly:
        """Image of an arbitrary source element, as a combined normal form."""
        out = f.map_vars(self.ring.field, self.all_vars, dict(self.images), lambda c: c)
        return self.ideal_ext.normal_form(out)

    def describe(self):
        lines = []
        for v in self.ring.vars:
            lines.append("%s -> %s" % (v, self.images[v]))
        return "\n".join(lines)

    def __repr__(self):
        return "Embedding(%s; outer %s)" % (
            ",".join(self.ring.vars),
            ",".join(self.tvars),
        )


def _extended_apply(D, f: Poly, all_vars) -> Poly:
    """The derivation extended outer-variable-linearly to the combined ring."""
    out = Poly.zero(f.field, all_vars)
    for v in D.ring.vars:
        dv = D.values[v]
        if dv.terms:
            out = out + f.partial(v) * _lift(dv, all_vars)
    return out


def exponential_embedding(ring, sequence, bound=DEFAULT_EXP_BOUND, outer_prefix="X"):
    """Build the iterated-exponential embedding of a derivation sequence.

    Each derivation must be certified or asserted locally nilpotent. The
    generator images are cross-checked against the closed-form coefficient
    formula; a mismatch is an internal fault, not an input error.
    """
    sequence = tuple(sequence)
    if not sequence:
        raise InputError("an embedding needs at least one derivation")
    if ring.field.characteristic != 0:
        raise PositiveCharacteristic("exponential embeddings need characteristic zero")
    for D in sequence:
        if D.ring is not ring and D.ring != ring:
            raise FieldMismatch("derivation %s lives on a different ring" % D.name)
        if not D.is_lnd_ready():
            raise InputError(
                "derivation %s is neither certified nor asserted locally nilpotent"
                % D.name
            )
    taken = set(ring.vars) | set(ring.field.constant_names())
    tvars = fresh_names(outer_prefix, len(sequence), taken)
    all_vars = ring.vars + tvars
    lifted_rels = [_lift(r, all_vars) for r in ring.relations]
    ideal_ext = Ideal(ring.field, all_vars, lifted_rels, ring.ideal.step_cap)

    images = {}
    for g in ring.vars:
        f = ideal_ext.normal_form(_lift(ring.gen(g), all_vars))
        for i, D in enumerate(sequence):
            tpoly = Poly.gen(ring.field, all_vars, tvars[i])
            acc = Poly.zero(ring.field, all_vars)
            cur = f
            n = 0
            while cur.terms:
                acc = acc + cur * tpoly ** n * Fraction(1, factorial(n))
                cur = ideal_ext.normal_form(_extended_apply(D, cur, all_vars))
                n += 1
                if n > bound:
                    raise DegBoundExceeded(
                        "exponential of %s on %s did not terminate within %d terms"
                        % (D.name, g, bound)
                    )
            f = ideal_ext.normal_form(acc)
        images[g] = f

    emb = Embedding(
        ring,
        tvars,
        images,
        ("exp_sequence", tuple(D.name for D in sequence)),
        sequence=sequence,
    )
    for g in ring.vars:
        oracle = closed_form_image(ring, sequence, tvars, ring.gen(g), bound)
        if emb.ideal_ext.normal_form(oracle - emb.images[g]).terms:
            raise InternalDisagreement(
                "iterated exponential and closed-form coefficients differ on %s" % g
            )
    return emb


def closed_form_image(ring, sequence, tvars, b: Poly, bound=DEFAULT_EXP_BOUND) -> Poly:
    """Image of b assembled directly from the coefficient formula.

    Independent of the iterated construction: enumerates multi-indices,
    applying the first derivation first, dividing by the factorials."""
    sequence = tuple(sequence)
    all_vars = ring.vars + tuple(tvars)
    entries = {(): ring.nf(b)}
    for D in sequence:
        nxt = {}
        for idx, f in entries.items():
            cur = f
            m = 0
            while cur.terms:
                nxt[idx + (m,)] = cur * Fraction(1, factorial(m))
                cur = D.apply(cur)
                m += 1
                if m > bound:
                    raise DegBoundExceeded(
                        "coefficient formula for %s did not terminate within %d"
                        % (D.name, bound)
                    )
        entries = nxt
    out = Poly.zero(ring.field, all_vars)
    for idx, c in entries.items():
        if not c.terms:
            continue
        mono = Poly.constant(ring.field, all_vars, ring.field.one())
        for i, e in enumerate(idx):
            if e:
                mono = mono * Poly.gen(ring.field, all_vars, tvars[i]) ** e
        out = out + _lift(c, all_vars) * mono
    return out


# ---------------------------------------------------------------------------
# points and specialization
# ---------------------------------------------------------------------------


def evaluate_with_embedding(f: Poly, coords, kappa):
    """Evaluate a source-coefficient polynomial at coordinates in kappa."""
    embed = _scalar_embedding(kappa, f.field)
    total = kappa.zero()
    for e, c in f.terms.items():
        val = embed(c)
        for i, k in enumerate(e):
            if k:
                val = val * coords[f.vars[i]] ** k
        total = total + val
    return total


class PointSpec:
    """A kappa-rational point of the source variety.

    kappa must be the coefficient field or a tower extending it; the
    coordinates must kill every relation (InvalidPoint otherwise)."""

    def __init__(self, ring: RingPresentation, kappa, coords, label=None):
        self.ring = ring
        self.field = kappa
        if not (kappa == ring.field or kappa.extends(ring.field)):
            raise InvalidPoint(
                "point coordinates live in a field that does not extend the "
                "coefficient field"
            )
        got = set(coords)
        need = set(ring.vars)
        if got != need:
            raise InvalidPoint(
                "point must assign exactly the generators %s" % (ring.vars,)
            )
        self.coords = {v: kappa.coerce(coords[v]) for v in ring.vars}
        self.label = label
        for r in ring.relations:
            val = evaluate_with_embedding(r, self.coords, kappa)
            if val != kappa.zero():
                raise InvalidPoint(
                    "relation %s does not vanish at the point (value %s)" % (r, val)
                )

    def describe(self):
        body = ", ".join("%s=%s" % (v, self.coords[v]) for v in self.ring.vars)
        if self.label:
            return "%s: (%s)" % (self.label, body)
        return "(%s)" % body

    def __repr__(self):
        return "PointSpec%s" % self.describe()


class SpecializedMap:
    """The embedding with source coordinates frozen at a point: a tuple of
    polynomials in the outer variables over the point's field."""

    def __init__(self, embedding: Embedding, point: PointSpec, images):
        self.embedding = embedding
        self.point = point
        self.images = tuple(images)

    def describe(self):
        ring = self.embedding.ring
        return "\n".join(
            "%s -> %s" % (v, img) for v, img in zip(ring.vars, self.images)
        )


def specialize(embedding: Embedding, point: PointSpec) -> SpecializedMap:
    ring = embedding.ring
    if point.ring is not ring and point.ring != ring:
        raise InvalidPoint("point belongs to a different presentation")
    kappa = point.field
    embed = _scalar_embedding(kappa, ring.field)
    mapping = {
        v: Poly.constant(kappa, embedding.tvars, point.coords[v]) for v in ring.vars
    }
    for X in embedding.tvars:
        mapping[X] = Poly.gen(kappa, embedding.tvars, X)
    images = [
        embedding.images[v].map_vars(kappa, embedding.tvars, mapping, embed)
        for v in ring.vars
    ]
    return SpecializedMap(embedding, point, images)


def generic_specialization(embedding: Embedding):
    """Images over the fraction field of the source: the generic point.

    Returns (fraction_field, images in the outer variables)."""
    ring = embedding.ring
    qf = QuotientFractionField(ring)
    mapping = {
        v: Poly.constant(qf, embedding.tvars, qf.from_poly(ring.gen(v)))
        for v in ring.vars
    }
    for X in embedding.tvars:
        mapping[X] = Poly.gen(qf, embedding.tvars, X)
    images = tuple(
        embedding.images[v].map_vars(qf, embedding.tvars, mapping, qf.coerce)
        for v in ring.vars
    )
    return qf, images


# ---------------------------------------------------------------------------
# injectivity
# ---------------------------------------------------------------------------


class InjectivityVerdict:
    def __init__(self, injective, method, rank, required_rank, kernel_gens=None):
        self.injective = injective
        self.method = method
        self.rank = rank
        self.required_rank = required_rank
        self.kernel_gens = kernel_gens

    def describe(self):
        bits = ["injective" if self.injective else "not injective", self.method]
        if self.rank is not None:
            bits.append("rank %d of %d" % (self.rank, self.required_rank))
        if self.kernel_gens:
            bits.append("kernel witnesses: %s" % ", ".join(str(g) for g in self.kernel_gens))
        return "; ".join(bits)

    def __repr__(self):
        return "InjectivityVerdict(%s)" % self.describe()


def injectivity_test(images, source_ring: RingPresentation, method="both") -> InjectivityVerdict:
    """Decide injectivity of the algebra map sending the i-th generator of
    the source to images[i], a polynomial in outer variables over some
    coefficient field extending (or fracturing) the source field.

    jacobian: full rank of the outer-variable Jacobian, characteristic
    zero only. elimination: the kernel ideal, computed by elimination,
    must land inside the relation ideal. both: run the two and insist
    they agree (OracleDisagreement otherwise).
    """
    images = tuple(images)
    if len(images) != len(source_ring.vars):
        raise InputError(
            "need one image per generator (%d expected, got %d)"
            % (len(source_ring.vars), len(images))
        )
    if method not in ("jacobian", "elimination", "both"):
        raise InputError("unknown method %r" % method)
    n = source_ring.dimension()
    kappa = images[0].field

    rank = None
    jac_verdict = None
    if method in ("jacobian", "both"):
        rank = jacobian_rank(images)
        jac_verdict = rank == n

    elim_verdict = None
    kernel_gens = None
    if method in ("elimination", "both"):
        embed = _scalar_embedding(kappa, source_ring.field)
        if kappa == source_ring.field:
            source_k = source_ring
        else:
            rels = [
                r.map_vars(
                    kappa,
                    source_ring.vars,
                    {v: Poly.gen(kappa, source_ring.vars, v) for v in source_ring.vars},
                    embed,
                )
                for r in source_ring.relations
            ]
            source_k = RingPresentation(
                kappa,
                source_ring.vars,
                rels,
                assume_domain=False,
                asserted_dimension=source_ring.asserted_dimension,
                step_cap=source_ring.ideal.step_cap,
            )
        target = Ideal(kappa, images[0].vars, [], source_ring.ideal.step_cap)
        ker = algebra_map_kernel(source_k, images, target)
        leftovers = tuple(
            g for g in (source_k.nf(p) for p in ker.gens) if g.terms
        )
        elim_verdict = not leftovers
        kernel_gens = leftovers or None

    if method == "jacobian":
        return InjectivityVerdict(jac_verdict, method, rank, n)
    if method == "elimination":
        return InjectivityVerdict(elim_verdict, method, None, n, kernel_gens)
    if jac_verdict != elim_verdict:
        raise OracleDisagreement(
            "jacobian route says %s (rank %d of %d) but elimination says %s"
            % (jac_verdict, rank, n, elim_verdict)
        )
    return InjectivityVerdict(jac_verdict, method, rank, n, kernel_gens)


def generic_injectivity(embedding: Embedding, method="jacobian") -> InjectivityVerdict:
    """Injectivity of the embedding at the generic point of the source."""
    _, images = generic_specialization(embedding)
    return injectivity_test(images, embedding.ring, method=method)


# ---------------------------------------------------------------------------
# open-locus certificate
# ---------------------------------------------------------------------------


class VariableCertificate:
    """Certificate data for one outer variable: a surviving annihilator
    degree, its leading surviving coefficient in the source ring with
    outer variables, and the source ideal of its outer-monomial
    coefficients."""

    __slots__ = ("var", "annihilator_degree", "leading_coefficient", "ideal_gens")

    def __init__(self, var, annihilator_degree, leading_coefficient, ideal_gens):
        self.var = var
        self.annihilator_degree = annihilator_degree
        self.leading_coefficient = leading_coefficient
        self.ideal_gens = tuple(ideal_gens)


class LocusCertificate:
    """An explicit open subset of the source on which every specialization
    of the embedding is injective: the points where, for each outer
    variable, not every generator of its certificate ideal vanishes."""

    def __init__(self, embedding: Embedding, per_variable):
        self.embedding = embedding
        self.per_variable = tuple(per_variable)

    def covers(self, point: PointSpec) -> bool:
        """True when the point provably lies in the injectivity locus."""
        kappa = point.field
        zero = kappa.zero()
        for vc in self.per_variable:
            if not any(
                evaluate_with_embedding(g, point.coords, kappa) != zero
                for g in vc.ideal_gens
            ):
                return False
        return True

    def product_generators(self, cap=128):
        """Generators of the product of the per-variable ideals; the locus
        is exactly the complement of that product's zero set."""
        count = 1
        for vc in self.per_variable:
            count *= len(vc.ideal_gens)
        if count > cap:
            return None
        ring = self.embedding.ring
        prods = []
        for combo in itertools.product(*(vc.ideal_gens for vc in self.per_variable)):
            p = ring.one()
            for g in combo:
                p = p * g
            prods.append(ring.nf(p))
        return tuple(prods)

    def describe(self):
        lines = []
        for vc in self.per_variable:
            lines.append(
                "%s: annihilator degree %d, ideal (%s)"
                % (
                    vc.var,
                    vc.annihilator_degree,
                    "; ".join(str(g) for g in vc.ideal_gens),
                )
            )
        return "\n".join(lines)


def certify_open_locus(embedding: Embedding) -> LocusCertificate:
    """Compute the per-outer-variable certificate ideals.

    Requires as many outer variables as the source dimension (reduce
    first) and a generically injective embedding; the construction
    fails with InternalDisagreement when no Groebner element survives,
    which the theory rules out under those hypotheses."""
    ring = embedding.ring
    field = ring.field
    n = ring.dimension()
    if len(embedding.tvars) != n:
        raise InputError(
            "certificate needs exactly dim = %d outer variables, got %d; "
            "reduce the embedding first" % (n, len(embedding.tvars))
        )
    taken = set(embedding.all_vars) | set(field.constant_names())
    wnames = fresh_names("w", len(ring.vars), taken)
    big_vars = ring.vars + wnames + embedding.tvars
    gens = [_lift(r, big_vars) for r in ring.relations]
    for v, w in zip(ring.vars, wnames):
        gens.append(Poly.gen(field, big_vars, w) - _lift(embedding.images[v], big_vars))
    big = Ideal(field, big_vars, gens, ring.ideal.step_cap)

    per_variable = []
    for Xj in embedding.tvars:
        keep = ring.vars + wnames + (Xj,)
        candidates = list(big.eliminate(keep).gens)
        candidates.sort(key=lambda p: (p.degree_in(Xj), len(p.terms), str(p)))
        found = None
        for cand in candidates:
            dtop = cand.degree_in(Xj)
            if dtop < 1:
                continue
            for d in range(dtop, -1, -1):
                coeff = cand.coeff_of_power(Xj, d)
                moved = _substitute_images(coeff, embedding, keep)
                if moved.terms:
                    if d == 0:
                        raise InternalDisagreement(
                            "only the degree-zero coefficient of a relation for "
                            "%s survived substitution" % Xj
                        )
                    found = (d, moved)
                    break
            if found:
                break
        if not found:
            raise InternalDisagreement(
                "no eliminated relation for %s survives substitution; is the "
                "embedding generically injective?" % Xj
            )
        degree, leading = found
        ideal_gens = _outer_monomial_coefficients(leading, embedding)
        if not ideal_gens:
            raise InternalDisagreement(
                "surviving coefficient for %s produced no source generators" % Xj
            )
        per_variable.append(VariableCertificate(Xj, degree, leading, ideal_gens))
    return LocusCertificate(embedding, per_variable)


def _substitute_images(coeff: Poly, embedding: Embedding, kept_vars) -> Poly:
    """Send tag variables to the embedding images, source variables to
    themselves, and reduce in the combined ring."""
    ring = embedding.ring
    field = ring.field
    mapping = {}
    for v in ring.vars:
        mapping[v] = Poly.gen(field, embedding.all_vars, v)
    for v, w in zip(ring.vars, _wnames_of(kept_vars, ring)):
        mapping[w] = embedding.images[v]
    for X in kept_vars:
        if X in embedding.tvars:
            mapping[X] = Poly.gen(field, embedding.all_vars, X)
    out = coeff.map_vars(field, embedding.all_vars, mapping, lambda c: c)
    return embedding.ideal_ext.normal_form(out)


def _wnames_of(kept_vars, ring):
    m = len(ring.vars)
    return tuple(kept_vars[m : m + m])


def _outer_monomial_coefficients(poly: Poly, embedding: Embedding):
    """Split an element of the combined ring by outer monomial; return the
    nonzero source coefficients, deduplicated, deterministically ordered."""
    ring = embedding.ring
    nsrc = len(ring.vars)
    buckets = {}
    for e, c in poly.terms.items():
        buckets.setdefault(e[nsrc:], {})[e[:nsrc]] = c
    gens = []
    seen = set()
    for outer in sorted(buckets):
        g = ring.nf(Poly(ring.field, ring.vars, buckets[outer]))
        if not g.terms:
            continue
        key = str(g)
        if key in seen:
            continue
        seen.add(key)
        gens.append(g)
    gens.sort(key=lambda p: (p.total_degree(), len(p.terms), str(p)))
    return tuple(gens)


# ---------------------------------------------------------------------------
# linear reduction of outer variables
# ---------------------------------------------------------------------------


def reduce_target_vars(
    embedding: Embedding,
    count,
    trials=64,
    rng=None,
    method="jacobian",
) -> Embedding:
    """Replace the outer variables by `count` linear combinations while
    keeping generic injectivity.

    Tries coordinate-subset substitutions first (in lexicographic order of
    index subsets), then substitutions with small random integer entries
    from rng. Each candidate is accepted iff the generic injectivity test
    still passes. ReductionFailed after `trials` candidates."""
    ring = embedding.ring
    N = len(embedding.tvars)
    if count > N:
        raise InputError("cannot reduce %d outer variables to %d" % (N, count))
    if count == N:
        return embedding
    if rng is None:
        rng = random.Random(0)
    taken = set(ring.vars) | set(ring.field.constant_names()) | set(embedding.tvars)
    yvars = fresh_names("Y", count, taken)

    def candidate_matrices():
        for subset in itertools.combinations(range(N), count):
            mat = [[0] * count for _ in range(N)]
            for j, i in enumerate(subset):
                mat[i][j] = 1
            yield mat
        while True:
            yield [
                [rng.randint(-3, 3) for _ in range(count)] for _ in range(N)
            ]

    tried = 0
    for mat in candidate_matrices():
        if tried >= trials:
            break
        tried += 1
        cand = _apply_matrix(embedding, mat, yvars)
        verdict = generic_injectivity(cand, method=method)
        if verdict.injective:
            cand.provenance = (
                "linear_reduction",
                tuple(tuple(row) for row in mat),
                embedding,
            )
            return cand
    raise ReductionFailed(
        "no linear substitution to %d outer variables kept generic "
        "injectivity after %d candidates" % (count, trials)
    )


def _apply_matrix(embedding: Embedding, mat, yvars):
    """Substitute X_i -> sum_j mat[i][j] Y_j in every image."""
    ring = embedding.ring
    field = ring.field
    new_all = ring.vars + tuple(yvars)
    mapping = {v: Poly.gen(field, new_all, v) for v in ring.vars}
    for i, X in enumerate(embedding.tvars):
        acc = Poly.zero(field, new_all)
        for j, Y in enumerate(yvars):
            a = mat[i][j]
            if a:
                acc = acc + Poly.gen(field, new_all, Y) * Fraction(a)
        mapping[X] = acc
    images = {
        v: embedding.images[v].map_vars(field, new_all, mapping, lambda c: c)
        for v in ring.vars
    }
    return Embedding(ring, yvars, images, ("linear_reduction", None, embedding))


# ---------------------------------------------------------------------------
# point families and sampling
# ---------------------------------------------------------------------------


def random_field_element(kappa, rng, low=-9, high=9):
    """A small deterministic draw: integer part plus one small multiple of
    each named constant of the tower."""
    elem = kappa.from_int(rng.randint(low, high))
    for name in kappa.constant_names():
        c = rng.randint(low, high)
        if c:
            elem = elem + kappa.symbol(name) * kappa.from_int(c)
    return elem


class PointFamily:
    """A parametric recipe for points: named parameters drawn from the
    field, coordinate expressions over those parameters.

    Division inside a coordinate expression is field division of bound
    values, so draws that hit a zero divisor are discarded and retried."""

    def __init__(self, ring, kappa, parameters, coord_exprs, label=None, low=-9, high=9):
        self.ring = ring
        self.field = kappa
        self.parameters = tuple(parameters)
        self.coord_exprs = dict(coord_exprs)
        self.label = label
        self.low = low
        self.high = high
        missing = set(ring.vars) - set(self.coord_exprs)
        if missing:
            raise InputError("family gives no expression for %s" % sorted(missing))

    def sample(self, rng, attempts=200) -> PointSpec:
        for _ in range(attempts):
            bindings = {
                p: random_field_element(self.field, rng, self.low, self.high)
                for p in self.parameters
            }
            bound = BoundConstants(self.field, bindings)
            coords = {}
            try:
                for v in self.ring.vars:
                    val = parse_field_element(self.coord_exprs[v], bound)
                    coords[v] = val
            except ZeroDivisionError:
                continue
            label = self.label
            if label:
                label = "%s[%s]" % (
                    label,
                    ",".join("%s=%s" % (p, bindings[p]) for p in self.parameters),
                )
            return PointSpec(self.ring, self.field, coords, label=label)
        raise InputError(
            "family %r produced no valid draw in %d attempts" % (self.label, attempts)
        )

    def sample_distinct(self, rng, count, attempts=200):
        """Draw until `count` points with pairwise distinct coordinates are
        collected; small parameter spaces repeat draws, so dedupe here."""
        points = []
        seen = set()
        for _ in range(attempts):
            if len(points) >= count:
                break
            pt = self.sample(rng, attempts=attempts)
            key = tuple(str(pt.coords[v]) for v in self.ring.vars)
            if key in seen:
                continue
            seen.add(key)
            points.append(pt)
        if len(points) < count:
            raise InputError(
                "family %r yielded only %d distinct points in %d attempts"
                % (self.label, len(points), attempts)
            )
        return points


class PointResult:
    __slots__ = ("point", "verdict", "certificate_covered", "images")

    def __init__(self, point, verdict, certificate_covered, images=()):
        self.point = point
        self.verdict = verdict
        self.certificate_covered = certificate_covered
        self.images = tuple(images)


def sample_and_test(
    embedding: Embedding,
    points,
    method="both",
    certificate: LocusCertificate | None = None,
):
    """Specialize at each point, decide injectivity, and cross-check the
    certificate: a covered point that tests non-injective is an oracle
    disagreement (the certificate is supposed to be sound)."""
    results = []
    for point in points:
        spec = specialize(embedding, point)
        verdict = injectivity_test(spec.images, embedding.ring, method=method)
        covered = None
        if certificate is not None:
            covered = certificate.covers(point)
            if covered and not verdict.injective:
                raise OracleDisagreement(
                    "certificate covers %s but the specialization tests "
                    "non-injective" % point.describe()
                )
        results.append(PointResult(point, verdict, covered, spec.images))
    return results
