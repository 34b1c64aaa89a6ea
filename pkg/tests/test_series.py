"""Coefficient sequences, Dirichlet convolution, reciprocals, evaluation."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirseries import (
    CoefficientSequence,
    SingularInputError,
    dirichlet_convolve,
    drop_unit,
    euler_product_zeta_n,
    evaluate,
    evaluate_smooth,
    multiplicative_extend,
    ones,
    power_shift,
    reciprocal_coeffs,
    unit,
    zeta_real,
)

ZETA_2 = 1.64493406684822643647
ZETA_4 = 1.08232323371113819152


def seq_from_list(values, kind="int"):
    def fill(n):
        assert n <= len(values)
        return list(values[:n])

    return CoefficientSequence(fill, kind, "test")


small_int_seqs = st.lists(st.integers(-9, 9), min_size=8, max_size=24).map(seq_from_list)


# --- materialization -------------------------------------------------------

def test_ones_unit_power_shift():
    assert ones().materialize(5) == [1, 1, 1, 1, 1]
    assert unit().materialize(5) == [1, 0, 0, 0, 0]
    assert power_shift(2).materialize(5) == [1, 4, 9, 16, 25]
    assert power_shift(2).kind == "int"
    half = power_shift(0.5).materialize(4)
    assert half == pytest.approx([1.0, math.sqrt(2), math.sqrt(3), 2.0])


def test_prefix_determinism():
    a = power_shift(1.5)
    long = a.materialize(200)
    short = a.materialize(50)
    assert long[:50] == short


def test_pointwise_at_matches_materialize():
    a = power_shift(3)
    values = a.materialize(100)
    assert [a.at(n) for n in range(1, 101)] == values


# --- Dirichlet convolution -------------------------------------------------

def test_convolution_divisor_count():
    d = dirichlet_convolve(ones(), ones())
    assert d.materialize(12) == [1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]


def test_convolution_identity():
    a = power_shift(2)
    assert dirichlet_convolve(a, unit()).materialize(50) == a.materialize(50)


@given(small_int_seqs, small_int_seqs)
@settings(max_examples=60, deadline=None)
def test_convolution_commutative(a, b):
    n = 8
    ab = dirichlet_convolve(a, b).materialize(n)
    ba = dirichlet_convolve(b, a).materialize(n)
    assert ab == ba


@given(small_int_seqs, small_int_seqs, small_int_seqs)
@settings(max_examples=40, deadline=None)
def test_convolution_associative(a, b, c):
    n = 8
    left = dirichlet_convolve(dirichlet_convolve(a, b), c).materialize(n)
    right = dirichlet_convolve(a, dirichlet_convolve(b, c)).materialize(n)
    assert left == right


def test_convolution_matches_bruteforce():
    a = power_shift(1)
    b = ones()
    got = dirichlet_convolve(a, b).materialize(60)
    for n in range(1, 61):
        direct = sum(d for d in range(1, n + 1) if n % d == 0)
        assert got[n - 1] == direct


# --- reciprocal ------------------------------------------------------------

def test_reciprocal_of_2_minus_zeta_counts_ordered_factorizations():
    # 1/(1 - (zeta - 1)) = 1/(2 - zeta)
    seq = reciprocal_coeffs(1.0, drop_unit(ones()))
    assert seq.materialize(12) == [1, 1, 1, 2, 1, 3, 1, 4, 2, 3, 1, 8]


def test_reciprocal_gives_moebius():
    # b_n = -1 for n >= 2: 1/(1 + (zeta - 1)) = 1/zeta
    b = seq_from_list([0] + [-1] * 19)
    mu = reciprocal_coeffs(1.0, b)
    assert mu.materialize(10) == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@given(small_int_seqs, st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_reciprocal_is_true_inverse(b, alpha):
    # c satisfies (alpha*unit - b) * c = unit with b supported on n >= 2
    b = drop_unit(b)
    c = reciprocal_coeffs(float(alpha), b)
    n = 8
    bvals = b.materialize(n)
    shifted = seq_from_list(
        [alpha - bvals[0]] + [-v for v in bvals[1:]], kind=c.kind
    )
    prod = dirichlet_convolve(shifted, c).materialize(n)
    assert prod[0] == pytest.approx(1.0)
    assert all(abs(v) < 1e-12 for v in prod[1:])


def test_reciprocal_rejects_zero_alpha():
    with pytest.raises(ValueError):
        reciprocal_coeffs(0.0, drop_unit(ones())).materialize(4)


# --- multiplicative extension ---------------------------------------------

def test_multiplicative_extend_radical():
    seq = multiplicative_extend(lambda p, e: p)
    values = seq.materialize(10**4)
    from dirseries import radical

    for n in range(1, 10**4 + 1):
        assert values[n - 1] == radical(n)
    assert seq.at(2**30 * 3) == 6


@given(st.integers(2, 200), st.integers(2, 200))
@settings(max_examples=60, deadline=None)
def test_multiplicative_extend_is_multiplicative(m, n):
    seq = multiplicative_extend(lambda p, e: p + e)
    values = seq.materialize(40000)
    if math.gcd(m, n) == 1:
        assert values[m * n - 1] == values[m - 1] * values[n - 1]


# --- evaluation ------------------------------------------------------------

def test_evaluate_zeta_values():
    got = evaluate(ones(), 2.0, 10**6, tail=True)
    assert got.value == pytest.approx(ZETA_2, abs=2e-6)
    assert got.tail_bound is not None and got.tail_bound < 2e-6
    got4 = evaluate(ones(), 4.0, 10**4)
    assert got4.value == pytest.approx(ZETA_4, abs=1e-11)


def test_evaluate_complex():
    # partial sums at a complex point agree with direct summation
    s = 2.0 + 1.0j
    direct = sum(n ** (-s) for n in range(1, 501))
    got = evaluate(ones(), s, 500)
    assert got.value == pytest.approx(direct, abs=1e-13)


def test_evaluate_smooth_matches_euler_product():
    for index in (1, 2, 3):
        for s in (1.0, 2.0):
            prod = euler_product_zeta_n(index, s)
            sm = evaluate_smooth(ones(), s, index, 10**6)
            assert abs(sm.value - prod) <= max(sm.tail_bound, 1e-12)


def test_euler_product_singular_at_zero():
    with pytest.raises(SingularInputError):
        euler_product_zeta_n(2, 0.0)


def test_zeta_real_oracle():
    assert zeta_real(2.0) == pytest.approx(ZETA_2, abs=1e-12)
    assert zeta_real(4.0) == pytest.approx(ZETA_4, abs=1e-12)
    assert zeta_real(2.5) == pytest.approx(1.34148725725091718, abs=1e-12)


def test_zeta_real_rejects_pole():
    with pytest.raises(ValueError):
        zeta_real(1.0)
