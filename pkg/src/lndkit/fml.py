"""Joint-kernel tooling for a family of locally nilpotent derivations and
the end-to-end pipeline.

The family's common kernel cuts out the rigid part of the ring: an element
fixed by every exponential automorphism is exactly an element every
derivation kills, and the pipeline's premise is that only constants
qualify. Membership is decided two independent ways (derivation values
versus the formal exponential), a degree-bounded basis of the joint kernel
is computed by exact linear algebra over the coefficient field, and the
pipeline chains embedding construction, generic injectivity, outer
variable reduction, the open-locus certificate, and point sampling."""

from __future__ import annotations

import random

from .derivations import (
    DEFAULT_NILPOTENCY_BOUND,
    _lift,
    certify_lnd,
    exp_map,
)
from .embeddings import (
    certify_open_locus,
    exponential_embedding,
    generic_injectivity,
    reduce_target_vars,
    sample_and_test,
)
from .errors import (
    FieldMismatch,
    GenericNotInjective,
    InputError,
    InternalDisagreement,
)
from .groebner import RingPresentation, standard_monomials
from .polynomials import Poly

# ---------------------------------------------------------------------------
# exact linear algebra over a field
# ---------------------------------------------------------------------------


def rref(rows, field):
    """Reduced row echelon form (a new matrix) and the pivot column list."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    zero = field.zero()
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != zero:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != zero:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows, ncols, field):
    """A canonical basis of the right kernel, one vector per free column."""
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    zero, one = field.zero(), field.one()
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# derivation families
# ---------------------------------------------------------------------------


class DerivationSet:
    """An ordered family of derivations of one presented ring."""

    def __init__(self, ring: RingPresentation, derivations):
        self.ring = ring
        self.derivations = tuple(derivations)
        if not self.derivations:
            raise InputError("a derivation set needs at least one derivation")
        for D in self.derivations:
            if D.ring is not ring and D.ring != ring:
                raise FieldMismatch(
                    "derivation %s lives on a different ring" % D.name
                )

    def __iter__(self):
        return iter(self.derivations)

    def __len__(self):
        return len(self.derivations)

    def names(self):
        return tuple(D.name for D in self.derivations)


def fixed_by_all(ds: DerivationSet, b: Poly, bound=DEFAULT_NILPOTENCY_BOUND) -> bool:
    """Whether every derivation in the family kills b.

    Decided both directly and through the formal exponential (an element
    is fixed by the one-parameter flow iff the derivation kills it); the
    two routes must agree for each derivation."""
    ring = ds.ring
    bnf = ring.nf(b)
    verdict = True
    for D in ds.derivations:
        by_value = not D.apply(bnf).terms
        E = exp_map(D, "T", bound)
        moved = E.apply_taylor(bnf, bound)
        by_flow = not E.ideal_ext.normal_form(moved - _lift(bnf, E.ring_ext)).terms
        if by_value != by_flow:
            raise InternalDisagreement(
                "derivation value and exponential flow disagree about %s under %s"
                % (bnf, D.name)
            )
        verdict = verdict and by_value
    return verdict


def kernel_intersection_bounded(ds: DerivationSet, degree_bound: int):
    """A basis of the joint kernel's low-degree part.

    Works in the span of the standard monomials of total degree at most
    degree_bound and solves, by exact elimination over the coefficient
    field, for the combinations every derivation kills. Returns monic
    polynomials, constants first; a trivial joint kernel shows up as the
    single basis element 1."""
    ring = ds.ring
    field = ring.field
    std = standard_monomials(ring.ideal, degree_bound)
    basis_polys = [
        Poly(field, ring.vars, {e: field.one()}) for e in std
    ]
    rows = []
    zero = field.zero()
    ncols = len(basis_polys)
    for D in ds.derivations:
        per = [D.apply(m) for m in basis_polys]
        by_monomial = {}
        for j, img in enumerate(per):
            for e, c in img.terms.items():
                by_monomial.setdefault(e, {})[j] = c
        for e in sorted(by_monomial, key=lambda t: (sum(t), t)):
            row = [zero] * ncols
            for j, c in by_monomial[e].items():
                row[j] = c
            rows.append(row)

    vecs = nullspace(rows, ncols, field)
    out = []
    for vec in vecs:
        terms = {}
        for j, c in enumerate(vec):
            if c != zero:
                terms[std[j]] = c
        p = Poly(field, ring.vars, terms)
        lm, lc = p.lt(ring.ideal.default_order)
        out.append(p * lc.inverse())
    out.sort(key=lambda p: (p.total_degree(), len(p.terms), str(p)))
    return tuple(out)


def base_change(obj, new_field, assume_domain=None):
    """Extend coefficients of a presentation or a derivation.

    new_field must extend the current coefficient tower. Domain-ness is
    not preserved by coefficient extension in general, so it must be
    re-asserted explicitly (defaults to the old flag)."""
    from .derivations import Derivation

    if isinstance(obj, RingPresentation):
        ring = obj
        embed = new_field.embed
        gens = {v: Poly.gen(new_field, ring.vars, v) for v in ring.vars}
        rels = [r.map_vars(new_field, ring.vars, gens, embed) for r in ring.relations]
        flag = ring.assume_domain if assume_domain is None else assume_domain
        return RingPresentation(
            new_field,
            ring.vars,
            rels,
            assume_domain=flag,
            asserted_dimension=ring.asserted_dimension,
            step_cap=ring.ideal.step_cap,
        )
    if isinstance(obj, Derivation):
        D = obj
        new_ring = base_change(D.ring, new_field, assume_domain)
        embed = new_field.embed
        gens = {v: Poly.gen(new_field, new_ring.vars, v) for v in new_ring.vars}
        values = {
            v: D.values[v].map_vars(new_field, new_ring.vars, gens, embed)
            for v in new_ring.vars
        }
        out = Derivation(new_ring, values, name=D.name, lnd_status=D.lnd_status)
        out.nilpotency_witness = D.nilpotency_witness
        return out
    raise InputError("base_change expects a presentation or a derivation")


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


class PipelineConfig:
    """Knobs for the end-to-end run; every default is deterministic."""

    def __init__(
        self,
        seed=0,
        nilpotency_bound=DEFAULT_NILPOTENCY_BOUND,
        trials=64,
        samples_per_family=3,
        kernel_degree_bound=2,
        sequence_repeat=1,
        max_sequence_repeat=3,
        generic_method="jacobian",
        point_method="both",
        with_certificate=True,
    ):
        self.seed = seed
        self.nilpotency_bound = nilpotency_bound
        self.trials = trials
        self.samples_per_family = samples_per_family
        self.kernel_degree_bound = kernel_degree_bound
        self.sequence_repeat = sequence_repeat
        self.max_sequence_repeat = max_sequence_repeat
        self.generic_method = generic_method
        self.point_method = point_method
        self.with_certificate = with_certificate


class PipelineResult:
    """Everything the pipeline produced, for reporting."""

    def __init__(self):
        self.ring = None
        self.derivation_names = ()
        self.nilpotency_witnesses = {}
        self.dimension = None
        self.kernel_basis = ()
        self.kernel_trivial = None
        self.embedding = None
        self.generic_verdict = None
        self.generic_attempts = ()
        self.repeat_used = None
        self.reduction_matrix = None
        self.reduced = None
        self.certificate = None
        self.point_results = ()
        self.config = None


def fml_pipeline(
    ring: RingPresentation,
    derivations,
    points=(),
    families=(),
    config: PipelineConfig | None = None,
) -> PipelineResult:
    """Run the full chain and return the structured result.

    The bounded joint-kernel basis is computed as evidence about the
    asserted triviality of the common kernel field and recorded, never
    raised on: the pipeline's falsification signal is the generic
    injectivity verdict itself. When the generic test fails, the
    derivation sequence is retried with the family repeated more times,
    up to max_sequence_repeat; GenericNotInjective only after the last
    attempt."""
    config = config or PipelineConfig()
    rng = random.Random(config.seed)
    ds = DerivationSet(ring, derivations)
    result = PipelineResult()
    result.ring = ring
    result.config = config
    result.derivation_names = ds.names()

    for D in ds:
        if not D.is_lnd_ready():
            certify_lnd(D, config.nilpotency_bound)
        result.nilpotency_witnesses[D.name] = D.nilpotency_witness

    n = ring.dimension()
    result.dimension = n

    basis = kernel_intersection_bounded(ds, config.kernel_degree_bound)
    result.kernel_basis = basis
    result.kernel_trivial = not any(p.total_degree() > 0 for p in basis)

    emb = None
    gv = None
    attempts = []
    for repeat in range(config.sequence_repeat, config.max_sequence_repeat + 1):
        sequence = tuple(ds.derivations) * repeat
        emb = exponential_embedding(ring, sequence, config.nilpotency_bound)
        gv = generic_injectivity(emb, method=config.generic_method)
        attempts.append((repeat, gv.rank))
        if gv.injective:
            result.repeat_used = repeat
            break
    result.embedding = emb
    result.generic_verdict = gv
    result.generic_attempts = tuple(attempts)
    if not gv.injective:
        exc = GenericNotInjective(
            "the iterated-exponential map is not generically injective "
            "(rank %s, needs %d; tried sequence repeats %s)"
            % (gv.rank, n, [r for r, _ in attempts]),
            rank=gv.rank,
            required=n,
        )
        exc.partial = result
        raise exc

    reduced = emb
    if len(emb.tvars) > n:
        reduced = reduce_target_vars(
            emb, n, trials=config.trials, rng=rng, method=config.generic_method
        )
        result.reduction_matrix = reduced.provenance[1]
    result.reduced = reduced

    if config.with_certificate:
        result.certificate = certify_open_locus(reduced)

    all_points = list(points)
    for fam in families:
        for _ in range(config.samples_per_family):
            all_points.append(fam.sample(rng))
    if all_points:
        result.point_results = tuple(
            sample_and_test(
                reduced,
                all_points,
                method=config.point_method,
                certificate=result.certificate,
            )
        )
    return result
