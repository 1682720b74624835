"""Deterministic construction of F_{p^m} with full exp/log/trace tables.

Elements are represented by integer labels in [0, q): the label of an element
with polynomial coordinates (c_0, ..., c_{m-1}) over F_p is sum(c_i * p**i).
Label 0 is the additive identity, label 1 the multiplicative identity, and for
prime fields labels coincide with residues mod p.

Multiplication, inversion and powering go through the discrete-log tables of a
fixed generator; addition and trace work on the polynomial coordinates.  The
modulus and generator are chosen deterministically (see build_field) so labels
are reproducible across runs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import BadRange, DivisionByZero, FieldTooLarge, NotADivisor, NotPrime
from .nt import divisors, is_prime, prime_factors

DEFAULT_Q_MAX = 1 << 22


def q_max_ceiling(q_max: int | None = None) -> int:
    """Effective table-size ceiling: explicit value, else GAUSSLAB_Q_MAX, else 2^22."""
    if q_max is not None:
        return q_max
    env = os.environ.get("GAUSSLAB_Q_MAX")
    if env:
        return int(env)
    return DEFAULT_Q_MAX


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p (coefficient lists, low degree first)


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, mod, p)


def _poly_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            f = (c * inv_lead) % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - f * mod[j]) % p
    del a[dm:]
    return _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_rem(list(base), mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(f, p):
    """f monic of degree m >= 1 over F_p; gcd test against x^{p^k} - x."""
    m = len(f) - 1
    if m == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    xpk = [0, 1]
    for _ in range(m // 2):
        xpk = _poly_powmod(xpk, p, f, p)
        diff = list(xpk)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(f, diff, p)
        if len(g) - 1 >= 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Coefficients are compared high-degree-first, which matches ascending order
    of the base-p integer whose most significant digit is the x^{m-1}
    coefficient.  Returned low degree first, length m+1, leading 1.
    """
    if m == 1:
        # degenerate prime-field convention: modulus x
        return (0, 1)
    for i in range(p**m):
        coeffs = [(i // p**k) % p for k in range(m)]
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found; this is a bug")


# ---------------------------------------------------------------------------


def digits_of(labels, p: int, m: int) -> np.ndarray:
    """Base-p digit matrix of labels, shape (..., m), low digit first."""
    labels = np.asarray(labels, dtype=np.int64)
    out = np.empty(labels.shape + (m,), dtype=np.int64)
    rest = labels
    for i in range(m):
        out[..., i] = rest % p
        rest = rest // p
    return out


def labels_of(digits: np.ndarray, p: int) -> np.ndarray:
    m = digits.shape[-1]
    pows = p ** np.arange(m, dtype=np.int64)
    return (digits * pows).sum(axis=-1)


@dataclass(frozen=True)
class FieldCtx:
    """Immutable description of F_{p^m} with precomputed tables."""

    p: int
    m: int
    q: int
    modulus: tuple[int, ...]  # monic, low degree first, length m+1
    generator: int
    exp_table: np.ndarray  # len q-1; exp_table[i] = label of generator**i
    log_table: np.ndarray  # len q; inverse of exp_table, log_table[0] = -1
    trace_table: np.ndarray  # len q; values in [0, p)

    @cached_property
    def trace_of_power(self) -> np.ndarray:
        """trace_of_power[i] = Tr(generator**i); the lookup every character
        scan runs on."""
        return self.trace_table[self.exp_table]

    # -- element codec ------------------------------------------------------

    def poly_of(self, x: int) -> tuple[int, ...]:
        return tuple(int(d) for d in digits_of(x, self.p, self.m))

    def label_of(self, poly) -> int:
        return sum(int(c) % self.p * self.p**i for i, c in enumerate(poly))

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        da = digits_of(a, self.p, self.m)
        db = digits_of(b, self.p, self.m)
        return int(labels_of((da + db) % self.p, self.p))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        da = digits_of(a, self.p, self.m)
        return int(labels_of((-da) % self.p, self.p))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        la = self.log_table[a] + self.log_table[b]
        return int(self.exp_table[la % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        q1 = self.q - 1
        return int(self.exp_table[(q1 - self.log_table[a]) % q1])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("0 to a negative power")
            return 0
        q1 = self.q - 1
        return int(self.exp_table[(int(self.log_table[a]) * e) % q1])

    def frobenius(self, x: int, k: int = 1) -> int:
        """x^(p^k); a field automorphism, identity for k = m."""
        if k < 0:
            raise BadRange("k must be nonnegative")
        if x == 0:
            return 0
        return self.pow(x, pow(self.p, k % self.m, self.q - 1))

    def trace(self, x: int) -> int:
        return int(self.trace_table[x])

    def element_order(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("0 has no multiplicative order")
        q1 = self.q - 1
        return q1 // math.gcd(int(self.log_table[x]), q1)

    # -- vectorized helpers -------------------------------------------------

    def add_labels(self, A, B) -> np.ndarray:
        """Broadcasting field addition on label arrays."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            return (A + B) % self.p
        da = digits_of(A, self.p, self.m)
        db = digits_of(B, self.p, self.m)
        return labels_of((da + db) % self.p, self.p)

    def neg_labels(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if self.m == 1:
            return (-A) % self.p
        return labels_of((-digits_of(A, self.p, self.m)) % self.p, self.p)

    def mul_labels(self, A, B) -> np.ndarray:
        """Broadcasting field multiplication on label arrays."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        q1 = self.q - 1
        la = self.log_table[A]
        lb = self.log_table[B]
        out = self.exp_table[(la + lb) % q1]
        return np.where((A == 0) | (B == 0), 0, out)

    # -- structure ----------------------------------------------------------

    def subfield_elements(self, nu: int) -> list[int]:
        """Sorted labels of the subfield with p^nu elements (fixed by Frob^nu)."""
        if nu < 1 or self.m % nu != 0:
            raise NotADivisor(nu, self.m)
        if nu == self.m:
            return list(range(self.q))
        q1 = self.q - 1
        sub_order = self.p**nu - 1
        step = q1 // sub_order
        elems = [0] + [int(self.exp_table[step * j]) for j in range(sub_order)]
        return sorted(elems)

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, q={self.q})"


# ---------------------------------------------------------------------------


def _find_generator(p, m, q, modulus):
    """Smallest label with multiplicative order q-1."""
    q1 = q - 1
    prime_divs = prime_factors(q1) if q1 > 1 else []
    for label in range(1, q):
        poly = [(label // p**k) % p for k in range(m)]
        if q1 == 1:
            return label, poly
        ok = all(_poly_powmod(poly, q1 // r, modulus, p) != [1] for r in prime_divs)
        if ok:
            return label, poly
    raise AssertionError("no generator found; this is a bug")


def build_field(p: int, m: int, q_max: int | None = None) -> FieldCtx:
    """Construct F_{p^m} with the lexicographically smallest irreducible
    modulus and the smallest-label generator.  Raises NotPrime / FieldTooLarge.
    """
    if not is_prime(p):
        raise NotPrime(p)
    if m < 1:
        raise BadRange("m must be >= 1")
    q = p**m
    ceiling = q_max_ceiling(q_max)
    if q > ceiling:
        raise FieldTooLarge(q, ceiling)

    modulus = list(smallest_irreducible(p, m))
    gen_label, gen_poly = _find_generator(p, m, q, modulus)
    q1 = q - 1

    # exp table by repeated multiplication in the polynomial representation
    exp = np.empty(q1, dtype=np.int64)
    cur = [1]
    pk = [p**k for k in range(m)]
    for i in range(q1):
        exp[i] = sum(c * pk[j] for j, c in enumerate(cur))
        cur = _poly_mulmod(cur, gen_poly, modulus, p)
    if cur != [1]:
        raise AssertionError("generator order mismatch; this is a bug")

    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q1, dtype=np.int64)
    if int((log[1:] < 0).sum()) != 0:
        raise AssertionError("exp table is not a bijection; this is a bug")

    # trace of g^l = sum_i (g^l)^{p^i}, added coordinatewise
    trace = np.zeros(q, dtype=np.int64)
    if q1 > 0:
        ls = np.arange(q1, dtype=np.int64)
        acc = np.zeros((q1, m), dtype=np.int64)
        for i in range(m):
            conj = exp[(ls * pow(p, i, q1)) % q1]
            acc = (acc + digits_of(conj, p, m)) % p
        if m > 1 and int(np.abs(acc[:, 1:]).sum()) != 0:
            raise AssertionError("trace left the prime subfield; this is a bug")
        trace[exp] = acc[:, 0]

    return FieldCtx(
        p=p,
        m=m,
        q=q,
        modulus=tuple(modulus),
        generator=gen_label,
        exp_table=exp,
        log_table=log,
        trace_table=trace,
    )


@lru_cache(maxsize=64)
def cached_field(p: int, m: int, q_max: int | None = None) -> FieldCtx:
    return build_field(p, m, q_max)


def field_arith(ctx: FieldCtx, op: str, *operands: int) -> int:
    """Dispatcher over {add, mul, inv, pow} on element labels."""
    if op == "add":
        return ctx.add(*operands)
    if op == "mul":
        return ctx.mul(*operands)
    if op == "inv":
        return ctx.inv(*operands)
    if op == "pow":
        return ctx.pow(*operands)
    raise ValueError(f"unknown op {op!r}")


def subfield_degrees(ctx: FieldCtx) -> list[int]:
    """Degrees nu of proper subfields: nu | m, 1 <= nu < m."""
    return [nu for nu in divisors(ctx.m) if nu < ctx.m]
