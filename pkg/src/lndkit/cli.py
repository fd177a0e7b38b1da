"""Manifest-driven command line.

Commands (all but `example` need --manifest PATH, where PATH may also be
a bundled fixture name):

    check-lnd   nilpotency status and witness degrees per derivation
    exp         exponential automorphism images for one derivation
    slice       local slice and the projection onto the kernel
    kernel      bounded joint kernel basis of all derivations
    psi         the iterated-exponential embedding images
    inject      generic + per-point injectivity verdicts
    certify     open-locus certificate ideals
    pipeline    the full chain, kernel evidence through point sampling
    xk-conic    characteristic-2 conic point classifier
    example     print a bundled fixture manifest

Exit codes: 0 success or verdict produced, 1 input errors, 2 evidence
that an asserted assumption is violated.

Reports go to stdout; --out BASE also writes BASE.txt and BASE.toml.
Reports are byte-identical for identical (manifest, seed).
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import fixtures
from ._version import __version__
from .conic import classify_lambda, classify_rational, conic_form
from .derivations import dixmier_project, exp_map, find_local_slice
from .embeddings import (
    certify_open_locus,
    exponential_embedding,
    generic_injectivity,
    reduce_target_vars,
    sample_and_test,
)
from .errors import (
    AssumptionViolation,
    GenericNotInjective,
    InputError,
    LndkitError,
    ManifestError,
)
from .fields import is_square
from .fml import DerivationSet, PipelineConfig, fml_pipeline, kernel_intersection_bounded
from .manifest import BuiltManifest, load_manifest, load_manifest_bytes
from .polynomials import parse_field_element
from .report import Report, assumptions_block, describe_ring

COMMANDS = (
    "check-lnd",
    "exp",
    "slice",
    "kernel",
    "psi",
    "inject",
    "certify",
    "pipeline",
    "xk-conic",
    "example",
)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; here status 2 means an
    assumption violation, so bad usage must become an InputError."""

    def error(self, message):
        raise InputError("usage: %s" % message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lndkit", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("name", nargs="?", help="fixture name (example command only)")
    p.add_argument(
        "--manifest",
        metavar="PATH",
        help="manifest file path, or a bundled fixture name",
    )
    p.add_argument("--seed", type=int, help="override run.seed")
    p.add_argument("--bound", type=int, help="override run.bound")
    p.add_argument("--trials", type=int, help="override run.trials")
    p.add_argument(
        "--method",
        choices=("jacobian", "elimination", "both"),
        help="override run.method (per-point injectivity route)",
    )
    p.add_argument(
        "--lambda",
        dest="lambdas",
        metavar="LIST",
        help="comma-separated lambda values for xk-conic",
    )
    p.add_argument(
        "--out", metavar="BASE", help="also write BASE.txt and BASE.toml"
    )
    p.add_argument("--version", action="version", version="lndkit %s" % __version__)
    return p


def _load_manifest(args) -> BuiltManifest:
    if not args.manifest:
        raise InputError(
            "a manifest is required: --manifest PATH (or a fixture name: %s)"
            % ", ".join(fixtures.fixture_names())
        )
    if args.manifest in fixtures.FIXTURES and not os.path.exists(args.manifest):
        data = fixtures.fixture_bytes(args.manifest)
        return BuiltManifest(load_manifest_bytes(data), data)
    raw, data = load_manifest(args.manifest)
    return BuiltManifest(raw, data)


def _effective_run(m: BuiltManifest, args) -> dict:
    run = dict(m.run)
    if args.seed is not None:
        run["seed"] = args.seed
    if args.bound is not None:
        if args.bound < 1:
            raise InputError("--bound must be at least 1")
        run["bound"] = args.bound
    if args.trials is not None:
        if args.trials < 1:
            raise InputError("--trials must be at least 1")
        run["trials"] = args.trials
    if args.method is not None:
        run["method"] = args.method
    if args.lambdas is not None:
        run["lambdas"] = [s.strip() for s in args.lambdas.split(",") if s.strip()]
    return run


def _fmt_bool(b) -> str:
    return "true" if b else "false"


def _require_derivations(m: BuiltManifest):
    if not m.derivations:
        raise InputError("the manifest declares no derivations (this command needs at least one)")


def _target_derivation(m: BuiltManifest, run):
    if run["derivation"] is not None:
        return m.derivation_named(run["derivation"])
    return m.derivations[0]


def _sequence_line(rep, names, repeat, tvars):
    rep.line(
        "sequence: %s (repeat %d) -> outer variables %s"
        % (", ".join(names), repeat, ", ".join(tvars))
    )


def _image_lines(rep, ring, images):
    rep.line("embedding images:")
    for v in ring.vars:
        rep.line("  %s -> %s" % (v, images[v]))


# -- command handlers --------------------------------------------------------


def cmd_check_lnd(m, run, rep):
    _require_derivations(m)
    rep.line("derivations:")
    rows = []
    for D in m.derivations:
        if isinstance(D.lnd_status, tuple):
            witness = ", ".join(
                "%s: %d" % (v, D.nilpotency_witness[v]) for v in m.ring.vars
            )
            rep.line(
                "  %s: locally nilpotent, certified within bound %d; "
                "witness degrees: %s" % (D.name, D.lnd_status[1], witness)
            )
            rows.append(
                {
                    "name": D.name,
                    "status": "certified",
                    "bound": D.lnd_status[1],
                    "witness": {v: D.nilpotency_witness[v] for v in m.ring.vars},
                }
            )
        else:
            rep.line("  %s: asserted locally nilpotent (not certified)" % D.name)
            rows.append({"name": D.name, "status": "asserted"})
    rep.table["derivations"] = rows
    rep.line()
    rep.line("verdict: ok")
    rep.table["verdict"] = "ok"
    return 0


def cmd_exp(m, run, rep):
    _require_derivations(m)
    D = _target_derivation(m, run)
    param_text = run["parameter"]
    try:
        param = parse_field_element(param_text, m.ring.field)
        kind = "scalar"
    except InputError:
        param = param_text
        kind = "formal"
    em = exp_map(D, param, bound=run["bound"])
    rep.line("derivation: %s" % D.name)
    rep.line("parameter: %s (%s)" % (param, kind))
    rep.line("exponential images:")
    imgs = {}
    for v in m.ring.vars:
        rep.line("  %s -> %s" % (v, em.images[v]))
        imgs[v] = str(em.images[v])
    rep.table["result"] = {
        "derivation": D.name,
        "parameter": str(param),
        "parameter_kind": kind,
        "images": imgs,
    }
    rep.line()
    rep.line("verdict: ok")
    rep.table["verdict"] = "ok"
    return 0


def cmd_slice(m, run, rep):
    _require_derivations(m)
    D = _target_derivation(m, run)
    sl = find_local_slice(D, search_degree=run["slice_degree"])
    rep.line("derivation: %s" % D.name)
    rep.line("local slice: s = %s" % sl.s)
    rep.line("slice image: a = D(s) = %s" % sl.a)
    rep.line("projection onto the kernel, as (numerator, k) meaning numerator / a^k:")
    proj = {}
    for v in m.ring.vars:
        num, k = dixmier_project(D, sl, m.ring.gen(v), bound=run["bound"])
        rep.line("  %s -> (%s, %d)" % (v, num, k))
        proj[v] = {"numerator": str(num), "power": k}
    rep.table["result"] = {
        "derivation": D.name,
        "slice": str(sl.s),
        "a": str(sl.a),
        "projection": proj,
    }
    rep.line()
    rep.line("verdict: ok")
    rep.table["verdict"] = "ok"
    return 0


def cmd_kernel(m, run, rep):
    _require_derivations(m)
    ds = DerivationSet(m.ring, m.derivations)
    basis = kernel_intersection_bounded(ds, run["kernel_degree_bound"])
    trivial = len(basis) == 1
    rep.line("derivations: %s" % ", ".join(ds.names()))
    rep.line("degree bound: %d" % run["kernel_degree_bound"])
    rep.line("joint kernel basis (normal forms of degree <= %d):" % run["kernel_degree_bound"])
    for b in basis:
        rep.line("  %s" % b)
    rep.line("trivial modulo constants: %s" % _fmt_bool(trivial))
    rep.table["result"] = {
        "derivations": list(ds.names()),
        "degree_bound": run["kernel_degree_bound"],
        "basis": [str(b) for b in basis],
        "trivial_modulo_constants": trivial,
    }
    rep.line()
    rep.line("verdict: ok")
    rep.table["verdict"] = "ok"
    return 0


def _build_embedding(m, run):
    _require_derivations(m)
    seq = m.sequence() * run["sequence_repeat"]
    return exponential_embedding(m.ring, seq, bound=run["bound"])


def cmd_psi(m, run, rep):
    emb = _build_embedding(m, run)
    names = [D.name for D in m.sequence()]
    _sequence_line(rep, names, run["sequence_repeat"], emb.tvars)
    _image_lines(rep, m.ring, emb.images)
    rep.table["result"] = {
        "sequence": names,
        "repeat": run["sequence_repeat"],
        "outer_vars": list(emb.tvars),
        "images": {v: str(emb.images[v]) for v in m.ring.vars},
    }
    rep.line()
    rep.line("verdict: ok")
    rep.table["verdict"] = "ok"
    return 0


def _sampled_points(m, run, rng):
    pts = list(m.points)
    for fam in m.families:
        for _ in range(run["samples_per_family"]):
            pts.append(fam.sample(rng))
    return pts


def cmd_inject(m, run, rep):
    emb = _build_embedding(m, run)
    names = [D.name for D in m.sequence()]
    _sequence_line(rep, names, run["sequence_repeat"], emb.tvars)
    gv = generic_injectivity(emb, method=run["generic_method"])
    rep.line("generic injectivity: %s" % gv.describe())
    rng = random.Random(run["seed"])
    pts = _sampled_points(m, run, rng)
    results = sample_and_test(emb, pts, method=run["method"])
    rep.line("points (method %s):" % run["method"])
    rows = []
    for r in results:
        verdict = "injective" if r.verdict.injective else "NOT injective"
        rep.line("  %s: %s" % (r.point.describe(), verdict))
        rows.append(
            {
                "point": r.point.describe(),
                "injective": bool(r.verdict.injective),
            }
        )
    rep.table["result"] = {
        "generic_injective": bool(gv.injective),
        "generic_method": run["generic_method"],
        "generic_rank": gv.rank if gv.rank is not None else -1,
        "required_rank": gv.required_rank,
        "points": rows,
    }
    rep.line()
    if gv.injective:
        good = sum(1 for r in results if r.verdict.injective)
        rep.line(
            "verdict: generically injective; %d of %d points injective"
            % (good, len(results))
        )
        rep.table["verdict"] = "injective"
    else:
        rep.line(
            "verdict: GenericNotInjective (rank %s, needs %d)"
            % (gv.rank, gv.required_rank)
        )
        rep.table["verdict"] = "GenericNotInjective"
    return 0


def _certificate_lines(rep, cert):
    rep.line("certificate per outer variable:")
    rows = []
    for vc in cert.per_variable:
        gens = ", ".join(str(g) for g in vc.ideal_gens)
        rep.line(
            "  %s: annihilator degree %d, coefficient ideal (%s)"
            % (vc.var, vc.annihilator_degree, gens)
        )
        rows.append(
            {
                "var": vc.var,
                "annihilator_degree": vc.annihilator_degree,
                "ideal": [str(g) for g in vc.ideal_gens],
            }
        )
    prod = cert.product_generators()
    if prod is None:
        rep.line("product ideal: skipped (too many generator combinations)")
        prod_strs = []
    else:
        prod_strs = [str(g) for g in prod]
        rep.line("product ideal generators: (%s)" % ", ".join(prod_strs))
    return rows, prod_strs


def cmd_certify(m, run, rep):
    emb = _build_embedding(m, run)
    names = [D.name for D in m.sequence()]
    _sequence_line(rep, names, run["sequence_repeat"], emb.tvars)
    gv = generic_injectivity(emb, method=run["generic_method"])
    rep.line("generic injectivity: %s" % gv.describe())
    if not gv.injective:
        rep.line()
        rep.line(
            "verdict: GenericNotInjective (rank %s, needs %d); "
            "no certificate exists for a non-injective map"
            % (gv.rank, gv.required_rank)
        )
        rep.table["verdict"] = "GenericNotInjective"
        return 0
    n = m.ring.dimension()
    rng = random.Random(run["seed"])
    if len(emb.tvars) > n:
        red = reduce_target_vars(
            emb, n, trials=run["trials"], rng=rng, method=run["generic_method"]
        )
        rep.line(
            "reduction to %d variables, matrix rows: %s"
            % (n, "; ".join(str(row) for row in red.provenance[1]))
        )
    else:
        red = emb
        rep.line("reduction: not needed (N = n = %d)" % n)
    cert = certify_open_locus(red)
    rows, prod = _certificate_lines(rep, cert)
    rep.table["result"] = {"certificate": rows, "product_ideal": prod}
    rep.line()
    rep.line("verdict: ok")
    rep.table["verdict"] = "ok"
    return 0


def _pipeline_config(run) -> PipelineConfig:
    return PipelineConfig(
        seed=run["seed"],
        nilpotency_bound=run["bound"],
        trials=run["trials"],
        samples_per_family=run["samples_per_family"],
        kernel_degree_bound=run["kernel_degree_bound"],
        sequence_repeat=run["sequence_repeat"],
        max_sequence_repeat=run["max_sequence_repeat"],
        generic_method=run["generic_method"],
        point_method=run["method"],
        with_certificate=run["with_certificate"],
    )


def _kernel_evidence_line(rep, result, run):
    basis = ", ".join(str(b) for b in result.kernel_basis)
    rep.line(
        "bounded joint kernel (degree <= %d): basis %s | trivial modulo "
        "constants: %s"
        % (run["kernel_degree_bound"], basis, _fmt_bool(result.kernel_trivial))
    )


def cmd_pipeline(m, run, rep):
    _require_derivations(m)
    if not run["assume_trivial_kernel_field"]:
        raise ManifestError(
            "the pipeline requires the manifest to assert K_Delta = k "
            "(set assume_trivial_kernel_field = true)",
            "run.assume_trivial_kernel_field",
        )
    cfg = _pipeline_config(run)
    try:
        result = fml_pipeline(
            m.ring, m.sequence(), points=m.points, families=m.families, config=cfg
        )
    except GenericNotInjective as e:
        partial = e.partial
        rep.line("dimension: n = %d" % partial.dimension)
        _kernel_evidence_line(rep, partial, run)
        rep.line(
            "generic injectivity attempts (%s): %s"
            % (
                run["generic_method"],
                "; ".join(
                    "repeat %d -> rank %s" % (r, rank)
                    for r, rank in partial.generic_attempts
                ),
            )
        )
        rep.line()
        rep.line("verdict: GenericNotInjective (rank %s, needs %d)" % (e.rank, e.required))
        rep.line(
            "note: evidence that the joint kernel field is larger than the "
            "base field, or that the sequence repeat budget is too small"
        )
        rep.table["result"] = {
            "dimension": partial.dimension,
            "kernel_basis": [str(b) for b in partial.kernel_basis],
            "kernel_trivial_modulo_constants": bool(partial.kernel_trivial),
            "attempts": [
                {"repeat": r, "rank": rank} for r, rank in partial.generic_attempts
            ],
        }
        rep.table["verdict"] = "GenericNotInjective"
        return 0

    names = list(result.derivation_names)
    rep.line("dimension: n = %d" % result.dimension)
    _sequence_line(rep, names, result.repeat_used, result.embedding.tvars)
    _kernel_evidence_line(rep, result, run)
    rep.line(
        "generic injectivity: %s | attempts: %s"
        % (
            result.generic_verdict.describe(),
            "; ".join(
                "repeat %d -> rank %s" % (r, rank)
                for r, rank in result.generic_attempts
            ),
        )
    )
    if result.reduction_matrix is not None:
        rep.line(
            "reduction to %d variables, matrix rows: %s"
            % (
                result.dimension,
                "; ".join(str(row) for row in result.reduction_matrix),
            )
        )
    else:
        rep.line("reduction: not needed (N = n)")
    _image_lines(rep, m.ring, result.reduced.images)
    table = {
        "dimension": result.dimension,
        "outer_count": len(result.embedding.tvars),
        "sequence": names,
        "repeat": result.repeat_used,
        "kernel_basis": [str(b) for b in result.kernel_basis],
        "kernel_trivial_modulo_constants": bool(result.kernel_trivial),
        "generic_injective": True,
        "images": {v: str(result.reduced.images[v]) for v in m.ring.vars},
    }
    if result.certificate is not None:
        rows, prod = _certificate_lines(rep, result.certificate)
        table["certificate"] = rows
        table["product_ideal"] = prod
    point_rows = []
    if result.point_results:
        rep.line("points (method %s):" % run["method"])
        for r in result.point_results:
            verdict = "injective" if r.verdict.injective else "NOT injective"
            covered = ""
            if r.certificate_covered is not None:
                covered = ", covered by certificate" if r.certificate_covered else ", not covered"
            rep.line("  %s: %s%s" % (r.point.describe(), verdict, covered))
            row = {
                "point": r.point.describe(),
                "injective": bool(r.verdict.injective),
                "images": {
                    v: str(img)
                    for v, img in zip(m.ring.vars, r.images)
                },
            }
            if r.certificate_covered is not None:
                row["covered"] = bool(r.certificate_covered)
            for v, img in zip(m.ring.vars, r.images):
                rep.line("    %s -> %s" % (v, img))
            point_rows.append(row)
    table["points"] = point_rows
    rep.table["result"] = table
    good = sum(1 for r in result.point_results if r.verdict.injective)
    rep.line()
    rep.line(
        "verdict: success (%d of %d sampled points embed; N = %d, n = %d)"
        % (good, len(result.point_results), len(result.embedding.tvars), result.dimension)
    )
    rep.table["verdict"] = "success"
    return 0


def cmd_xk_conic(m, run, rep):
    form = conic_form(m.ring)
    rep.line("derivation pipeline unavailable (char 2)")
    rep.line(
        "conic form: %s^2 + a*%s^2 + %s with a = %s"
        % (form.yvar, form.xvar, form.xvar, form.a)
    )
    square = is_square(form.a)
    rep.line("a is a square in %s: %s" % (m.ring.field.describe(), _fmt_bool(square)))
    lam_rows = []
    if run["lambdas"]:
        rep.line("constructed points:")
        for lam_text in run["lambdas"]:
            lp = classify_lambda(form, lam_text)
            rep.line("  %s | witness: %s" % (lp.describe(), lp.witness))
            lam_rows.append(
                {
                    "lambda": str(lp.lam),
                    "proper": lp.proper,
                    "member": lp.member,
                    "in_locus": lp.in_locus,
                    "witness": str(lp.witness),
                }
            )
    rng = random.Random(run["seed"])
    rational = list(m.points)
    for fam in m.families:
        rational.extend(fam.sample_distinct(rng, run["samples_per_family"]))
    rat_rows = []
    if rational:
        rep.line("rational points:")
        for pt in rational:
            rv = classify_rational(form, pt)
            rep.line("  %s" % rv.describe())
            rat_rows.append(
                {"point": pt.describe(), "in_locus": rv.in_locus}
            )
    rep.table["result"] = {
        "a": str(form.a),
        "a_is_square": square,
        "constructed": lam_rows,
        "rational": rat_rows,
    }
    n_in = sum(1 for r in lam_rows if r["in_locus"]) + sum(
        1 for r in rat_rows if r["in_locus"]
    )
    n_out = len(lam_rows) + len(rat_rows) - n_in
    rep.line()
    rep.line("verdict: %d points in locus, %d points outside" % (n_in, n_out))
    rep.table["verdict"] = "classified"
    return 0


_HANDLERS = {
    "check-lnd": cmd_check_lnd,
    "exp": cmd_exp,
    "slice": cmd_slice,
    "kernel": cmd_kernel,
    "psi": cmd_psi,
    "inject": cmd_inject,
    "certify": cmd_certify,
    "pipeline": cmd_pipeline,
    "xk-conic": cmd_xk_conic,
}


def _dispatch(args, stdout) -> int:
    if args.command == "example":
        name = args.name or args.manifest
        if not name:
            raise InputError(
                "example needs a fixture name: %s" % ", ".join(fixtures.fixture_names())
            )
        if name not in fixtures.FIXTURES:
            raise InputError(
                "unknown fixture %r (known: %s)"
                % (name, ", ".join(fixtures.fixture_names()))
            )
        stdout.write(fixtures.fixture_bytes(name).decode("utf-8"))
        return 0
    m = _load_manifest(args)
    run = _effective_run(m, args)
    rep = Report(args.command, m.digest, run["seed"])
    assumptions_block(
        rep,
        m,
        include_kernel_field=(
            args.command == "pipeline" and run["assume_trivial_kernel_field"]
        ),
    )
    rep.line()
    code = _HANDLERS[args.command](m, run, rep)
    stdout.write(rep.text())
    if args.out:
        with open(args.out + ".txt", "w", encoding="utf-8") as fh:
            fh.write(rep.text())
        with open(args.out + ".toml", "w", encoding="utf-8") as fh:
            fh.write(rep.toml())
    return code


def main(argv=None) -> int:
    stdout = sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args, stdout)
    except AssumptionViolation as e:
        print("assumption violation: %s" % e, file=sys.stderr)
        return 2
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except LndkitError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
