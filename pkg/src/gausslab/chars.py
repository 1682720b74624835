"""Additive character sums: Gauss sums, subgroup sums, incomplete sums over
generator powers, and weighted bilinear/trilinear sums.

Sums of unit characters accumulate exactly as CycloSum multiplicity vectors;
weighted sums use compensated double-precision complex accumulation.  The
all-character scans (one row per a = g^i, a != 0) run on the backend kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .cyclo import CycloSum, magnitudes_from_counts, root_table
from .errors import BadRange, BudgetExceeded
from .field import FieldCtx


def psi_exponent(ctx: FieldCtx, a: int, x: int) -> int:
    """Tr(a*x) in [0, p); the character value is e_p of this."""
    return ctx.trace(ctx.mul(a, x))


def psi(ctx: FieldCtx, a: int, x: int) -> complex:
    return complex(root_table(ctx.p)[psi_exponent(ctx, a, x)])


# ---------------------------------------------------------------------------
# exact single-character sums


def _hist_for_character(ctx: FieldCtx, la: int, offsets: np.ndarray) -> np.ndarray:
    q1 = ctx.q - 1
    vals = ctx.trace_of_power[(la + offsets) % q1]
    return np.bincount(vals, minlength=ctx.p)


def gauss_sum(ctx: FieldCtx, n: int, a: int) -> CycloSum:
    """S_n(a) = sum over all x in F_q of psi_a(x^n), exact.

    n is first reduced to d = gcd(n, q-1), which leaves the sum unchanged.
    """
    if n < 1:
        raise BadRange("n must be >= 1")
    q1 = ctx.q - 1
    d = math.gcd(n, q1) if q1 else 1
    counts = np.zeros(ctx.p, dtype=np.int64)
    if a == 0:
        counts[0] = ctx.q
        return CycloSum(ctx.p, counts)
    la = int(ctx.log_table[a])
    # x = g^i, i = 0..q-2 walks x^d over the d-th power subgroup d times each
    offsets = (d * np.arange(q1, dtype=np.int64)) % q1
    counts = _hist_for_character(ctx, la, offsets)
    counts[0] += 1  # the x = 0 term
    return CycloSum(ctx.p, counts)


def subgroup_sum(ctx: FieldCtx, H, a: int) -> CycloSum:
    """S(a, H) = sum over h in H of psi_a(h), exact; H is a SubgroupSpec."""
    if a == 0:
        counts = np.zeros(ctx.p, dtype=np.int64)
        counts[0] = H.order
        return CycloSum(ctx.p, counts)
    q1 = ctx.q - 1
    offsets = (H.n * np.arange(H.order, dtype=np.int64)) % q1
    return CycloSum(ctx.p, _hist_for_character(ctx, int(ctx.log_table[a]), offsets))


def incomplete_sum(ctx: FieldCtx, g: int, K: int, a: int) -> CycloSum:
    """Sum over j = 1..K of psi_a(g^j), exact."""
    if g == 0:
        raise BadRange("g must be nonzero")
    t = ctx.element_order(g)
    if K < 1 or K > t:
        raise BadRange(f"K must be in [1, ord(g) = {t}]")
    if a == 0:
        counts = np.zeros(ctx.p, dtype=np.int64)
        counts[0] = K
        return CycloSum(ctx.p, counts)
    q1 = ctx.q - 1
    lg = int(ctx.log_table[g])
    offsets = (lg * np.arange(1, K + 1, dtype=np.int64)) % q1
    return CycloSum(ctx.p, _hist_for_character(ctx, int(ctx.log_table[a]), offsets))


# ---------------------------------------------------------------------------
# all-character scans (rows indexed by la, a = g^la, a != 0)


def char_scan(ctx: FieldCtx, offsets: np.ndarray, zero_terms: int = 0) -> np.ndarray:
    """Count matrix (q-1, p): row la holds the CycloSum counts of
    sum_j psi_a(g^{offsets[j]}) for a = g^la, plus zero_terms at t = 0."""
    q1 = ctx.q - 1
    offs = np.ascontiguousarray(np.asarray(offsets, dtype=np.int64) % q1)
    counts = _backend.char_scan_counts(
        np.ascontiguousarray(ctx.trace_of_power), offs, ctx.p
    )
    if zero_terms:
        counts[:, 0] += zero_terms
    return counts


def scan_subgroup(ctx: FieldCtx, H) -> np.ndarray:
    offsets = H.n * np.arange(H.order, dtype=np.int64)
    return char_scan(ctx, offsets)


def scan_gauss(ctx: FieldCtx, n: int) -> np.ndarray:
    q1 = ctx.q - 1
    d = math.gcd(n, q1) if q1 else 1
    sub = char_scan(ctx, d * np.arange(q1 // d, dtype=np.int64))
    counts = d * sub
    counts[:, 0] += 1
    return counts


def scan_incomplete(ctx: FieldCtx, g: int, K: int) -> np.ndarray:
    if g == 0:
        raise BadRange("g must be nonzero")
    t = ctx.element_order(g)
    if K < 1 or K > t:
        raise BadRange(f"K must be in [1, ord(g) = {t}]")
    lg = int(ctx.log_table[g])
    return char_scan(ctx, lg * np.arange(1, K + 1, dtype=np.int64))


def scan_subset(ctx: FieldCtx, X) -> np.ndarray:
    """Counts of sum_{x in X} psi_a(x) for every a != 0."""
    X = np.asarray(list(X), dtype=np.int64)
    logs = ctx.log_table[X]
    nonzero = logs[logs >= 0]
    return char_scan(ctx, nonzero, zero_terms=int((logs < 0).sum()))


def _check_budget(ctx: FieldCtx, budget: int | None):
    if budget is not None and ctx.q - 1 > budget:
        raise BudgetExceeded(f"scan needs {ctx.q - 1} evaluations, budget {budget}")


def max_over_characters(ctx: FieldCtx, kind: str, budget: int | None = None, **params):
    """Exact maximizer of the chosen sum's magnitude over all a != 0.

    kind: 'gauss' (n), 'subgroup' (H), or 'incomplete' (g, K).
    Returns (a_star, magnitude); ties broken by smallest label of a.
    """
    _check_budget(ctx, budget)
    if kind == "gauss":
        counts = scan_gauss(ctx, params["n"])
    elif kind == "subgroup":
        counts = scan_subgroup(ctx, params["H"])
    elif kind == "incomplete":
        counts = scan_incomplete(ctx, params["g"], params["K"])
    else:
        raise ValueError(f"unknown scan kind {kind!r}")
    return argmax_character(ctx, counts)


def argmax_character(ctx: FieldCtx, counts: np.ndarray) -> tuple[int, float]:
    mags = magnitudes_from_counts(counts, ctx.p)
    best = mags.max()
    labels = ctx.exp_table[np.flatnonzero(mags == best)]
    return int(labels.min()), float(best)


# ---------------------------------------------------------------------------
# weighted sums


@dataclass
class WeightedSum:
    value: complex
    terms: int
    delta: float | None = None  # magnitude / #terms, for trilinear sums

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def _kahan_sum(values: np.ndarray) -> complex:
    """Compensated summation of a 1-D complex array."""
    s = 0.0 + 0.0j
    c = 0.0 + 0.0j
    for v in values:
        y = v - c
        t = s + y
        c = (t - s) - y
        s = t
    return complex(s)


def _as_weights(w, n: int) -> np.ndarray:
    if w is None:
        return np.ones(n, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    if w.shape != (n,):
        raise ValueError("weight vector length mismatch")
    return w


def bilinear_sum(ctx: FieldCtx, X, Y, alpha=None, beta=None) -> WeightedSum:
    """sum_{x,y} alpha_x beta_y psi(xy); exact double loop over |X||Y| terms."""
    X = np.asarray(list(X), dtype=np.int64)
    Y = np.asarray(list(Y), dtype=np.int64)
    alpha = _as_weights(alpha, len(X))
    beta = _as_weights(beta, len(Y))
    t = ctx.trace_table[ctx.mul_labels(X[:, None], Y[None, :])]
    rows = root_table(ctx.p)[t] @ beta
    value = _kahan_sum(alpha * rows)
    return WeightedSum(value=value, terms=len(X) * len(Y))


def trilinear_sum(ctx: FieldCtx, X, Y, Z, alpha=None, beta=None, gamma=None) -> WeightedSum:
    """sum_{x,y,z} alpha_x beta_y gamma_z psi(xyz), grouped through the
    products u = xy so the cost is O(|X||Y| + #distinct(u)|Z|)."""
    X = np.asarray(list(X), dtype=np.int64)
    Y = np.asarray(list(Y), dtype=np.int64)
    Z = np.asarray(list(Z), dtype=np.int64)
    alpha = _as_weights(alpha, len(X))
    beta = _as_weights(beta, len(Y))
    gamma = _as_weights(gamma, len(Z))
    U = ctx.mul_labels(X[:, None], Y[None, :])
    uniq, inverse = np.unique(U, return_inverse=True)
    t = ctx.trace_table[ctx.mul_labels(uniq[:, None], Z[None, :])]
    inner = root_table(ctx.p)[t] @ gamma
    terms = (alpha[:, None] * beta[None, :]) * inner[inverse.reshape(U.shape)]
    value = _kahan_sum(terms.ravel())
    n_terms = len(X) * len(Y) * len(Z)
    return WeightedSum(value=value, terms=n_terms, delta=abs(value) / n_terms)


# ---------------------------------------------------------------------------
# running maximum of incomplete sums (the shift-trick quantity sigma)


def sigma_running_max(ctx: FieldCtx, g: int, J: int) -> float:
    """sigma(J) = max over 1 <= J' <= J and a != 0 of |sum_{j<=J'} psi_a(g^j)|."""
    if g == 0:
        raise BadRange("g must be nonzero")
    t = ctx.element_order(g)
    if J < 1 or J > t:
        raise BadRange("J out of range")
    q1 = ctx.q - 1
    lg = int(ctx.log_table[g])
    rows = np.arange(q1, dtype=np.int64)
    counts = np.zeros((q1, ctx.p), dtype=np.int64)
    best = 0.0
    for j in range(1, J + 1):
        vals = ctx.trace_of_power[(rows + lg * j) % q1]
        counts[rows, vals] += 1
        best = max(best, float(magnitudes_from_counts(counts, ctx.p).max()))
    return best
