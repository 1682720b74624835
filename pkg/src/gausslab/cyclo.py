"""Exact sums of p-th roots of unity as integer multiplicity vectors.

A sum of unit terms e_p(t) = exp(2*pi*i*t/p) is stored as counts[t] = how many
times e_p(t) occurs.  Because sum_t e_p(t) = 0, two count vectors differing by
a multiple of the all-ones vector represent the same complex number; the
canonical form subtracts the minimum entry.  All arithmetic on counts is exact
integer arithmetic; conversion to a float magnitude happens once, at
comparison time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=256)
def root_table(p: int) -> np.ndarray:
    """Unit roots e_p(t) for t = 0..p-1."""
    return np.exp(2j * np.pi * np.arange(p) / p)


@dataclass
class CycloSum:
    p: int
    counts: np.ndarray  # signed int64, length p

    @classmethod
    def zero(cls, p: int) -> "CycloSum":
        return cls(p, np.zeros(p, dtype=np.int64))

    @classmethod
    def unit(cls, p: int, t: int = 0) -> "CycloSum":
        c = np.zeros(p, dtype=np.int64)
        c[t % p] = 1
        return cls(p, c)

    @classmethod
    def from_counts(cls, p: int, counts) -> "CycloSum":
        c = np.asarray(counts, dtype=np.int64)
        if c.shape != (p,):
            raise ValueError("counts must have length p")
        return cls(p, c.copy())

    def canonical(self) -> np.ndarray:
        """Representative with minimum entry 0."""
        return self.counts - self.counts.min()

    def total(self) -> int:
        """Sum of multiplicities of this representative (number of unit terms
        for a raw accumulated sum)."""
        return int(self.counts.sum())

    def value(self) -> complex:
        return complex(np.dot(self.counts, root_table(self.p)))

    def magnitude(self) -> float:
        return abs(self.value())

    def _check(self, other: "CycloSum"):
        if self.p != other.p:
            raise ValueError(f"mixed root orders {self.p} and {other.p}")

    def __add__(self, other: "CycloSum") -> "CycloSum":
        self._check(other)
        return CycloSum(self.p, self.counts + other.counts)

    def __sub__(self, other: "CycloSum") -> "CycloSum":
        self._check(other)
        return CycloSum(self.p, self.counts - other.counts)

    def scaled(self, k: int) -> "CycloSum":
        return CycloSum(self.p, self.counts * int(k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloSum):
            return NotImplemented
        return self.p == other.p and bool(
            np.array_equal(self.canonical(), other.canonical())
        )

    def __repr__(self):
        return f"CycloSum(p={self.p}, counts={self.canonical().tolist()})"


def magnitudes_from_counts(counts: np.ndarray, p: int) -> np.ndarray:
    """Row-wise |sum_t counts[., t] e_p(t)| for a (rows, p) count matrix."""
    u = root_table(p)
    re = counts @ u.real
    im = counts @ u.imag
    return np.hypot(re, im)
