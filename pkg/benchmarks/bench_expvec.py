#!/usr/bin/env python3
"""Benchmark the exponent-vector kernel: compiled extension vs pure Python.

Runs three workloads against whichever backend is active in this process,
then re-executes itself with LNDKIT_PURE=1 to collect the fallback numbers
and prints a side-by-side table.

    python3 benchmarks/bench_expvec.py [--ops N] [--repeat N]

Workloads:

  primitives   tight loops over exp_add / exp_lcm / exp_divides / exp_deg
               and find_divisor on seeded random exponent vectors
  axpy         sparse polynomial accumulation f += c * x^u * g with
               Fraction coefficients
  certificate  a realistic end-to-end job: build the iterated-exponential
               embedding of the standard surface fixture and compute its
               open-locus certificate (Groebner-heavy)
"""

import argparse
import json
import os
import random
import statistics
import subprocess
import sys
import time
from fractions import Fraction

from lndkit import (
    RingPresentation,
    certify_lnd,
    certify_open_locus,
    check_derivation,
    exponential_embedding,
    rationals,
)
from lndkit.expvec import (
    BACKEND,
    axpy,
    exp_add,
    exp_deg,
    exp_divides,
    exp_lcm,
    find_divisor,
)

WIDTH = 6
SEED = 318


def _random_vectors(rng, count):
    return [tuple(rng.randint(0, 8) for _ in range(WIDTH)) for _ in range(count)]


def bench_primitives(ops):
    rng = random.Random(SEED)
    vecs = _random_vectors(rng, 512)
    pairs = [
        (vecs[rng.randrange(len(vecs))], vecs[rng.randrange(len(vecs))])
        for _ in range(ops)
    ]
    lms = _random_vectors(rng, 40)
    probes = _random_vectors(rng, ops // 2)
    t0 = time.perf_counter()
    for a, b in pairs:
        s = exp_add(a, b)
        exp_lcm(a, b)
        exp_deg(s)
        if exp_divides(a, s):
            pass
    for m in probes:
        find_divisor(lms, m)
    return time.perf_counter() - t0


def bench_axpy(ops):
    rng = random.Random(SEED + 1)
    base = {
        v: Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        for v in _random_vectors(rng, 300)
    }
    items = [
        (v, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        for v in _random_vectors(rng, 200)
    ]
    shifts = _random_vectors(rng, 64)
    c = Fraction(3, 7)
    rounds = max(1, ops // 2000)
    t0 = time.perf_counter()
    for i in range(rounds):
        f = dict(base)
        axpy(f, items, shifts[i % len(shifts)], c)
        axpy(f, items, shifts[(i + 7) % len(shifts)], -c)
    return time.perf_counter() - t0


def bench_certificate(_ops):
    t0 = time.perf_counter()
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
    emb = exponential_embedding(ring, (d1, d2))
    certify_open_locus(emb)
    return time.perf_counter() - t0


WORKLOADS = (
    ("primitives", bench_primitives),
    ("axpy", bench_axpy),
    ("certificate", bench_certificate),
)


def measure(ops, repeat):
    out = {}
    for name, fn in WORKLOADS:
        times = [fn(ops) for _ in range(repeat)]
        out[name] = statistics.median(times)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ops", type=int, default=200_000, help="primitive op count")
    ap.add_argument("--repeat", type=int, default=5, help="repeats per workload (median)")
    ap.add_argument("--json", action="store_true", help="emit raw numbers (internal)")
    args = ap.parse_args(argv)

    results = measure(args.ops, args.repeat)
    if args.json:
        print(json.dumps({"backend": BACKEND, "results": results}))
        return 0

    columns = {BACKEND: results}
    if BACKEND == "compiled":
        env = dict(os.environ, LNDKIT_PURE="1")
        raw = subprocess.run(
            [
                sys.executable,
                os.path.abspath(__file__),
                "--json",
                "--ops",
                str(args.ops),
                "--repeat",
                str(args.repeat),
            ],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        child = json.loads(raw.stdout)
        columns[child["backend"]] = child["results"]

    print("exponent-vector kernel benchmark")
    print("ops=%d repeat=%d (median)" % (args.ops, args.repeat))
    print()
    if "python" not in columns:
        print("backend: %s only (no comparison column available)" % BACKEND)
    header = ["workload"] + list(columns) + (
        ["speedup"] if len(columns) == 2 else []
    )
    rows = [header]
    for name, _ in WORKLOADS:
        row = [name]
        for backend in columns:
            row.append("%.4f s" % columns[backend][name])
        if len(columns) == 2:
            fast = columns["compiled"][name]
            slow = columns["python"][name]
            row.append("%.2fx" % (slow / fast) if fast > 0 else "n/a")
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
