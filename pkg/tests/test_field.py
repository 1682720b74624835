"""Field construction and arithmetic, checked against the defining axioms
and a handful of hand-computed small-field values."""

import numpy as np
import pytest

from gausslab.errors import DivisionByZero, FieldTooLarge, NotPrime
from gausslab.field import (
    FieldCtx,
    build_field,
    cached_field,
    digits_of,
    field_arith,
    labels_of,
    smallest_irreducible,
    subfield_degrees,
)


def test_modulus_is_lexicographically_smallest():
    # x^2 + x + 1 over F_2 and x^2 + 1 over F_3 are the first monic
    # irreducibles in the ascending coefficient order.
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(2, 3) == (1, 1, 0, 1)


def test_prime_field_layout(f7):
    assert f7.q == 7
    assert f7.add(3, 5) == 1
    assert f7.mul(3, 5) == 1
    assert f7.inv(3) == 5
    assert f7.trace(4) == 4


def test_f4_table(f4):
    # labels: 0, 1, alpha = 2, alpha + 1 = 3 with alpha^2 = alpha + 1
    assert f4.mul(2, 2) == 3
    assert f4.mul(2, 3) == 1
    assert f4.trace(2) == 1
    assert f4.trace(1) == 0


def test_f9_trace(f9):
    # modulus x^2 + 1: alpha^2 = -1, so Tr(alpha) = alpha + alpha^3 = 0
    # and Tr(alpha + 1) = 2.
    assert tuple(f9.modulus) == (1, 0, 1)
    assert f9.trace(3) == 0
    assert f9.trace(4) == 2


@pytest.mark.parametrize("p,m", [(2, 4), (3, 3), (5, 2), (7, 2), (11, 1)])
def test_arithmetic_axioms(p, m):
    ctx = cached_field(p, m)
    rng = np.random.default_rng(p * 100 + m)
    for _ in range(200):
        x, y, z = (int(v) for v in rng.integers(0, ctx.q, size=3))
        assert ctx.add(x, y) == ctx.add(y, x)
        assert ctx.mul(x, y) == ctx.mul(y, x)
        assert ctx.add(ctx.add(x, y), z) == ctx.add(x, ctx.add(y, z))
        assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
        assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
        assert ctx.add(x, ctx.neg(x)) == 0
        if x:
            assert ctx.mul(x, ctx.inv(x)) == 1


@pytest.mark.parametrize("p,m", [(2, 4), (3, 3), (5, 2)])
def test_generator_is_primitive_and_smallest(p, m):
    ctx = cached_field(p, m)
    q1 = ctx.q - 1
    assert ctx.element_order(ctx.generator) == q1
    for g in range(1, ctx.generator):
        assert ctx.element_order(g) < q1


@pytest.mark.parametrize("p,m", [(2, 6), (3, 3), (5, 2)])
def test_trace_properties(p, m):
    ctx = cached_field(p, m)
    rng = np.random.default_rng(1)
    for _ in range(100):
        x, y = (int(v) for v in rng.integers(0, ctx.q, size=2))
        c = int(rng.integers(0, p))
        # F_p-linearity and Frobenius invariance
        assert ctx.trace(ctx.add(x, y)) == (ctx.trace(x) + ctx.trace(y)) % p
        cx = 0  # scalar c acts by repeated addition
        for _ in range(c):
            cx = ctx.add(cx, x)
        assert ctx.trace(cx) == (c * ctx.trace(x)) % p
        assert ctx.trace(ctx.frobenius(x)) == ctx.trace(x)
    # trace is onto F_p, each fiber has size q/p
    fibers = np.bincount(ctx.trace_table, minlength=p)
    assert (fibers == ctx.q // p).all()


def test_exp_log_roundtrip(f27):
    for x in range(1, f27.q):
        assert int(f27.exp_table[f27.log_table[x]]) == x


def test_digits_labels_roundtrip():
    labels = np.arange(81)
    assert (labels_of(digits_of(labels, 3, 4), 3) == labels).all()


def test_subfield_is_closed(f16):
    assert subfield_degrees(f16) == [1, 2]
    G = f16.subfield_elements(2)
    assert len(G) == 4
    gs = set(G)
    for x in G:
        for y in G:
            assert f16.add(x, y) in gs
            assert f16.mul(x, y) in gs


def test_field_arith_dispatch(f7):
    assert field_arith(f7, "add", 3, 5) == 1
    assert field_arith(f7, "mul", 3, 5) == 1
    assert field_arith(f7, "inv", 3) == 5
    with pytest.raises(DivisionByZero):
        field_arith(f7, "inv", 0)
    with pytest.raises(ZeroDivisionError):  # same exception, stdlib alias
        f7.inv(0)


def test_build_field_rejections():
    with pytest.raises(NotPrime):
        build_field(6, 1)
    with pytest.raises(FieldTooLarge):
        build_field(2, 30)
    with pytest.raises(FieldTooLarge):
        build_field(101, 1, q_max=100)


def test_cached_field_identity():
    assert cached_field(3, 2) is cached_field(3, 2)


def test_frozen_ctx(f5):
    assert isinstance(f5, FieldCtx)
    with pytest.raises(Exception):
        f5.p = 7
