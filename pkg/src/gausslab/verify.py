"""Assert-mode verification sweeps: exact identities plus every
constant-free inequality, evaluated per field.  Each check yields
BoundReports; any 'fail' verdict is a defect."""

from __future__ import annotations

import math

import numpy as np

from .bounds import (
    BoundReport,
    eval_eq28,
    eval_lemma4,
    eval_lemma5,
    eval_lemma6,
    eval_sec7_second_moment,
    eval_shift_trick,
    eval_weil,
    _report,
)
from .chars import char_scan, gauss_sum, scan_subgroup
from .energy import additive_energy, dyadic_select, energy_via_fourth_moment
from .field import FieldCtx, subfield_degrees
from .groups import nth_power_subgroup
from .nt import divisors


def _exact_report(bound_id, ctx, params, violations, checked, notes=None) -> BoundReport:
    notes = dict(notes or {})
    notes["checked"] = checked
    rep = _report(bound_id, ctx, params, float(violations), 1.0, "assert", notes=notes)
    rep.verdict = "pass" if violations == 0 else "fail"
    return rep


# ---------------------------------------------------------------------------
# exact identities


def check_identity_eq3(ctx: FieldCtx) -> list[BoundReport]:
    """S_n(a) = 1 + n S(a, H) at the CycloSum level, every n | q-1, a != 0.

    The left side is histogrammed over all q terms directly; the right side
    comes from an independent subgroup scan."""
    q1 = ctx.q - 1
    out = []
    e0 = np.zeros(ctx.p, dtype=np.int64)
    e0[0] = 1
    for n in divisors(q1):
        H = nth_power_subgroup(ctx, n)
        full = char_scan(ctx, (n * np.arange(q1, dtype=np.int64)) % q1, zero_terms=1)
        sub = scan_subgroup(ctx, H)
        diff = full - n * sub
        canon = diff - diff.min(axis=1, keepdims=True)
        violations = int((canon != e0[None, :]).any(axis=1).sum())
        out.append(_exact_report("identity_eq3", ctx, {"n": n}, violations, q1))
    return out


def check_degree_reduction(ctx: FieldCtx, rng: np.random.Generator, trials: int) -> BoundReport:
    """gauss_sum(n) equals a direct unreduced evaluation for n not dividing
    q-1."""
    q1 = ctx.q - 1
    violations = 0
    for _ in range(trials):
        n = int(rng.integers(2, 4 * q1 + 2))
        while q1 % n == 0:
            n = int(rng.integers(2, 4 * q1 + 2))
        a = int(rng.integers(1, ctx.q))
        reduced = gauss_sum(ctx, n, a)
        direct = char_scan_single(ctx, n, a)
        if reduced != direct:
            violations += 1
    return _exact_report("degree_reduction", ctx, {"trials": trials}, violations, trials)


def char_scan_single(ctx: FieldCtx, n: int, a: int):
    """S_n(a) histogrammed term by term with the raw exponent n (oracle path,
    no gcd reduction)."""
    from .cyclo import CycloSum

    counts = np.zeros(ctx.p, dtype=np.int64)
    if a == 0:
        counts[0] = ctx.q
        return CycloSum(ctx.p, counts)
    counts[0] += 1  # x = 0
    q1 = ctx.q - 1
    la = int(ctx.log_table[a])
    idx = (la + (n * np.arange(q1, dtype=np.int64)) % q1) % q1
    counts += np.bincount(ctx.trace_of_power[idx], minlength=ctx.p)
    return CycloSum(ctx.p, counts)


def check_fourth_moment(ctx: FieldCtx, rng: np.random.Generator, subsets: int) -> list[BoundReport]:
    """(1/q) sum_a |sum_X psi_a|^4 agrees with the direct E_+(X) count."""
    out = []
    for i in range(subsets):
        size = int(rng.integers(1, min(ctx.q, 64) + 1))
        X = rng.choice(ctx.q, size=size, replace=False)
        fm = energy_via_fourth_moment(ctx, X)
        direct = additive_energy(ctx, X).value
        rel = abs(fm - direct) / direct
        rep = _report("sec6_fourth_moment", ctx, {"trial": i, "size": size}, rel, 1e-9,
                      "assert", notes={"direct": direct})
        out.append(rep)
    return out


def check_subfield_intersection(ctx: FieldCtx) -> list[BoundReport]:
    """Closed-form |H ∩ G| equals enumeration for all n | q-1, nu | m, nu < m."""
    from .groups import subfield_intersection_size

    out = []
    for nu in subfield_degrees(ctx):
        violations = 0
        checked = 0
        for n in divisors(ctx.q - 1):
            formula, enumerated = subfield_intersection_size(ctx, n, nu)
            checked += 1
            if formula != enumerated:
                violations += 1
        out.append(_exact_report("subfield_eq6", ctx, {"nu": nu}, violations, checked))
    return out


def check_claim1(ctx: FieldCtx) -> list[BoundReport]:
    """|H ∩ cG| is 0 or |H ∩ G| for every subgroup H, subfield G, coset cG."""
    q1 = ctx.q - 1
    out = []
    for nu in subfield_degrees(ctx):
        s = ctx.p**nu - 1
        n_cosets = q1 // s
        violations = 0
        checked = 0
        for n in divisors(q1):
            H = nth_power_subgroup(ctx, n)
            per_coset = np.zeros(n_cosets, dtype=np.int64)
            for h in H.elements:
                per_coset[int(ctx.log_table[h]) % n_cosets] += 1
            base = int(per_coset[0])  # the coset of G* itself: |H ∩ G|
            checked += n_cosets + 1
            violations += int(((per_coset != 0) & (per_coset != base)).sum())
            # c = 0 coset is {0}; H never meets it, so the count 0 is allowed
        out.append(_exact_report("claim1_dichotomy", ctx, {"nu": nu}, violations, checked))
    return out


def check_subfield_energy(ctx: FieldCtx) -> list[BoundReport]:
    """E_+(G) = |G|^3 exactly for every proper subfield."""
    out = []
    for nu in subfield_degrees(ctx):
        G = ctx.subfield_elements(nu)
        e = additive_energy(ctx, G).value
        violations = 0 if e == len(G) ** 3 else 1
        out.append(
            _exact_report("subfield_energy", ctx, {"nu": nu}, violations, 1,
                          notes={"energy": e, "expected": len(G) ** 3})
        )
    return out


# ---------------------------------------------------------------------------
# randomized assert-mode instances


def _random_subset(rng, q, lo=2, hi=None):
    hi = min(q, 32) if hi is None else min(q, hi)
    lo = min(lo, hi)
    size = int(rng.integers(lo, hi + 1))
    return np.sort(rng.choice(q, size=size, replace=False))


def _weights(rng, n, style):
    if style == 0:
        return None  # unit weights
    if style == 1:
        return rng.choice([-1.0, 1.0], size=n).astype(np.complex128)
    phases = rng.uniform(0, 2 * np.pi, size=n)
    return np.exp(1j * phases)


def check_random_bounds(ctx: FieldCtx, rng: np.random.Generator, trials: int) -> list[BoundReport]:
    """Seeded random instances of the constant-free inequalities."""
    out = []
    q = ctx.q
    for i in range(trials):
        X = _random_subset(rng, q)
        Y = _random_subset(rng, q)
        style = i % 3
        out.append(eval_lemma4(ctx, X, Y, _weights(rng, len(X), style),
                               _weights(rng, len(Y), style), seed=i))
        out.extend(eval_lemma5(ctx, X, Y, seed=i))
        out.extend(eval_eq28(ctx, X, Y, seed=i))
        out.append(eval_sec7_second_moment(ctx, _random_subset(rng, q, hi=12),
                                           _random_subset(rng, q, hi=12), seed=i))
        # shift trick on a random generator power
        g = int(ctx.exp_table[rng.integers(0, q - 1)]) if q > 2 else 1
        t = ctx.element_order(g)
        if t >= 2:
            K = int(rng.integers(2, t + 1))
            J = int(rng.integers(1, min(K, 8) + 1))
            a = int(ctx.exp_table[rng.integers(0, q - 1)])
            out.append(eval_shift_trick(ctx, g, K, J, a, seed=i))
    return out


def check_weil_all(ctx: FieldCtx) -> list[BoundReport]:
    return [eval_weil(ctx, n) for n in divisors(ctx.q - 1) if n >= 2]


def check_lemma6_all(ctx: FieldCtx) -> list[BoundReport]:
    return [eval_lemma6(ctx, nth_power_subgroup(ctx, n)) for n in divisors(ctx.q - 1)]


# ---------------------------------------------------------------------------
# dyadic pigeonhole (field-independent)


def check_dyadic(rng: np.random.Generator, instances: int) -> list[BoundReport]:
    """Constructive postcondition N |X'| >= K / (2 log2 M) on random
    instances; M is drawn as a power of two so the level count is exactly
    log2 M."""
    from .field import build_field

    ctx = build_field(2, 1)  # reports need a field; the check is field-free
    out = []
    violations = 0
    worst = math.inf
    for i in range(instances):
        k = int(rng.integers(1, 11))
        M = float(2**k)
        n = int(rng.integers(1, 200))
        f = rng.uniform(0, M, size=n)
        mass = float(f[f > 1].sum())
        if mass <= 0:
            continue
        K = mass * float(rng.uniform(0.1, 1.0))
        sel, N = dyadic_select(list(range(n)), dict(enumerate(f)), K, M)
        lower = K / (2 * math.log2(M)) if M > 1 else 0.0
        got = N * len(sel)
        if got < lower:
            violations += 1
        if lower > 0:
            worst = min(worst, got / lower)
    return [
        _exact_report("lemma7_dyadic", ctx, {"instances": instances}, violations,
                      instances, notes={"worst_margin": worst})
    ]
