"""Small integer number-theory helpers (trial division scale)."""

from __future__ import annotations

import math


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(k: int) -> list[int]:
    """All divisors of k, ascending."""
    if k < 1:
        raise ValueError("k must be positive")
    small, large = [], []
    f = 1
    while f * f <= k:
        if k % f == 0:
            small.append(f)
            if f != k // f:
                large.append(k // f)
        f += 1
    return small + large[::-1]


def prime_powers_up_to(q_max: int, min_m: int = 1) -> list[tuple[int, int]]:
    """All (p, m) with p prime, m >= min_m and p**m <= q_max, sorted by p**m."""
    out = []
    for p in range(2, q_max + 1):
        if not is_prime(p):
            continue
        if p**min_m > q_max:
            break
        m = min_m
        while p**m <= q_max:
            out.append((p, m))
            m += 1
    out.sort(key=lambda pm: pm[0] ** pm[1])
    return out


def ilog2_ceil(x: float) -> int:
    return max(0, math.ceil(math.log2(x)))
