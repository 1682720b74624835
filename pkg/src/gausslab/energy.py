"""Difference/ratio sets, representation functions, additive and
multiplicative energies, the fourth-moment route to E_+, and the constructive
dyadic pigeonhole."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .chars import scan_subset
from .cyclo import magnitudes_from_counts
from .errors import BudgetExceeded, MassTooSmall
from .field import FieldCtx, digits_of

__all__ = [
    "EnergyRecord",
    "difference_set",
    "ratio_set",
    "additive_energy",
    "multiplicative_energy",
    "energy_via_fourth_moment",
    "dyadic_select",
]


@dataclass
class EnergyRecord:
    kind: str  # 'additive' | 'multiplicative'
    value: int  # sum of r(d)^2, exact
    histogram: np.ndarray  # r(d) indexed by element label, length q
    size_a: int
    size_b: int


def _labels(A) -> np.ndarray:
    return np.asarray(sorted(set(int(a) for a in A)), dtype=np.int64)


def difference_set(ctx: FieldCtx, A) -> set[int]:
    A = _labels(A)
    diffs = ctx.add_labels(A[:, None], ctx.neg_labels(A)[None, :])
    return set(int(d) for d in np.unique(diffs))


def ratio_set(ctx: FieldCtx, A) -> set[int]:
    A = _labels(A)
    B = A[A != 0]
    if len(B) == 0:
        return set()
    inv = np.array([ctx.inv(int(b)) for b in B], dtype=np.int64)
    ratios = ctx.mul_labels(A[:, None], inv[None, :])
    return set(int(r) for r in np.unique(ratios))


def _sum_hist(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    da = np.ascontiguousarray(digits_of(A, ctx.p, ctx.m))
    db = np.ascontiguousarray(digits_of(B, ctx.p, ctx.m))
    powp = ctx.p ** np.arange(ctx.m, dtype=np.int64)
    return _backend.pair_sum_hist(da, db, ctx.p, powp, ctx.q)


def _mul_hist(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    la = np.ascontiguousarray(ctx.log_table[A[A != 0]])
    lb = np.ascontiguousarray(ctx.log_table[B[B != 0]])
    hist = np.zeros(ctx.q, dtype=np.int64)
    if len(la) and len(lb):
        prod = _backend.pair_mul_hist(la, lb, np.ascontiguousarray(ctx.exp_table))
        hist[: len(prod)] += prod
    # pairs with a zero factor all land on the product 0
    hist[0] += len(A) * len(B) - len(la) * len(lb)
    return hist


def _record(kind: str, hist: np.ndarray, na: int, nb: int) -> EnergyRecord:
    value = sum(int(c) * int(c) for c in hist if c)
    return EnergyRecord(kind=kind, value=value, histogram=hist, size_a=na, size_b=nb)


def additive_energy(ctx: FieldCtx, A, B=None) -> EnergyRecord:
    """E_+(A, B) = #{(a1, a2, b1, b2) : a1 + b1 = a2 + b2} = sum_d r(d)^2
    with r(d) = #{(a, b) : a + b = d}."""
    A = _labels(A)
    B = A if B is None else _labels(B)
    return _record("additive", _sum_hist(ctx, A, B), len(A), len(B))


def multiplicative_energy(ctx: FieldCtx, A, B=None) -> EnergyRecord:
    A = _labels(A)
    B = A if B is None else _labels(B)
    return _record("multiplicative", _mul_hist(ctx, A, B), len(A), len(B))


def energy_via_fourth_moment(ctx: FieldCtx, X, budget: int | None = None) -> float:
    """(1/q) sum over all a in F_q of |sum_{x in X} psi_a(x)|^4, which equals
    E_+(X) exactly; evaluated from exact per-character counts."""
    X = _labels(X)
    if len(X) == 0:
        raise MassTooSmall("X must be nonempty")
    if budget is not None and ctx.q - 1 > budget:
        raise BudgetExceeded(f"scan needs {ctx.q - 1} evaluations, budget {budget}")
    counts = scan_subset(ctx, X)
    mags2 = magnitudes_from_counts(counts, ctx.p) ** 2
    total = math.fsum(mags2 * mags2) + float(len(X)) ** 4  # a = 0 contributes |X|^4
    return total / ctx.q


def dyadic_select(X, f, K: float, M: float):
    """Pick the dyadic level N = 2^j (j >= 0) of f maximizing the carried
    mass, over elements with f(x) > 1.  Requires sum of f over those elements
    to be at least K.  Returns (X_selected, N) with
    sum_{X'} f >= K / log2(M) and N |X'| >= K / (2 log2(M)) whenever the
    occupied level count is at most log2(M)."""
    X = list(X)
    fv = [float(f[x]) if not callable(f) else float(f(x)) for x in X]
    if any(v < 0 or v > M for v in fv):
        raise ValueError("f values must lie in [0, M]")
    eligible = [(x, v) for x, v in zip(X, fv) if v > 1.0]
    mass = math.fsum(v for _, v in eligible)
    if mass < K:
        raise MassTooSmall(f"mass over f > 1 is {mass}, below K = {K}")
    levels: dict[int, list] = {}
    for x, v in eligible:
        j = max(0, math.ceil(math.log2(v)) - 1)  # N = 2^j, N < v <= 2N
        levels.setdefault(j, []).append((x, v))
    best_j = max(levels, key=lambda j: (math.fsum(v for _, v in levels[j]), -j))
    selected = [x for x, _ in levels[best_j]]
    return selected, float(2**best_j)
