#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Runs each hot kernel on identical inputs through both implementations and
reports wall time and speedup.  The fallback is imported directly, so no
environment switching is needed; results also sanity-check that the two
backends agree bit for bit.

Usage: python benchmarks/bench_kernels.py [--q-max N] [--repeat R]
"""

import argparse
import time

import numpy as np

from gausslab import _kernels_py
from gausslab.field import build_field, digits_of

try:
    from gausslab import _kernels as _compiled
except ImportError:
    _compiled = None


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_field(p, m, repeat):
    ctx = build_field(p, m)
    q1 = ctx.q - 1
    rng = np.random.default_rng(0)
    rows = []

    top = np.ascontiguousarray(ctx.trace_of_power)
    offsets = np.ascontiguousarray(np.sort(rng.choice(q1, size=min(q1, 512), replace=False)).astype(np.int64))
    tc, rc = _time(lambda: _compiled.char_scan_counts(top, offsets, ctx.p), repeat)
    tp, rp = _time(lambda: _kernels_py.char_scan_counts(top, offsets, ctx.p), repeat)
    assert np.array_equal(np.asarray(rc), rp)
    rows.append(("char_scan_counts", tc, tp))

    A = rng.choice(ctx.q, size=min(ctx.q, 1024), replace=False).astype(np.int64)
    B = rng.choice(ctx.q, size=min(ctx.q, 1024), replace=False).astype(np.int64)
    da = np.ascontiguousarray(digits_of(A, ctx.p, ctx.m))
    db = np.ascontiguousarray(digits_of(B, ctx.p, ctx.m))
    powp = ctx.p ** np.arange(ctx.m, dtype=np.int64)
    tc, rc = _time(lambda: _compiled.pair_sum_hist(da, db, ctx.p, powp, ctx.q), repeat)
    tp, rp = _time(lambda: _kernels_py.pair_sum_hist(da, db, ctx.p, powp, ctx.q), repeat)
    assert np.array_equal(np.asarray(rc), rp)
    rows.append(("pair_sum_hist", tc, tp))

    la = np.ascontiguousarray(ctx.log_table[A[A != 0]])
    lb = np.ascontiguousarray(ctx.log_table[B[B != 0]])
    et = np.ascontiguousarray(ctx.exp_table)
    tc, rc = _time(lambda: _compiled.pair_mul_hist(la, lb, et), repeat)
    tp, rp = _time(lambda: _kernels_py.pair_mul_hist(la, lb, et), repeat)
    assert np.array_equal(np.asarray(rc), rp)
    rows.append(("pair_mul_hist", tc, tp))

    print(f"\nF_{ctx.q} (p={p}, m={m})")
    print(f"  {'kernel':<18} {'compiled':>10} {'numpy':>10} {'speedup':>8}")
    for name, tc, tp in rows:
        print(f"  {name:<18} {tc * 1e3:9.3f}ms {tp * 1e3:9.3f}ms {tp / tc:7.2f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--fields", default="1009:1,2:10,3:7,7:4",
                    help="comma-separated p:m pairs")
    args = ap.parse_args()
    if _compiled is None:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    for spec in args.fields.split(","):
        p, m = (int(v) for v in spec.split(":"))
        bench_field(p, m, args.repeat)


if __name__ == "__main__":
    main()
