from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_euler.egf import (
    TruncatedEGF,
    egf_constant,
    egf_exp_linear,
    egf_inv,
    egf_mul,
    egf_scale_arg,
    euler_egf,
)
from padic_euler.errors import DomainError, NotInvertible
from padic_euler.padic import make

P, PREC = 5, 8


def series(values, p=P, prec=PREC):
    return TruncatedEGF(p, tuple(make(p, prec, v) for v in values))


def test_exp_linear_coefficients():
    e = egf_exp_linear(make(P, PREC, 3), 4)
    assert [c.to_fraction() for c in e.coeffs] == [1, 3, 9, 27, 81]


def test_mul_of_exponentials_adds_exponents():
    a, b = make(P, PREC, 2), make(P, PREC, 7)
    assert egf_mul(egf_exp_linear(a, 6), egf_exp_linear(b, 6)) == egf_exp_linear(a + b, 6)


def test_difference_of_squares():
    one = make(P, PREC, 1)
    e = egf_exp_linear(one, 7)
    lhs = (e + 1) * (e - 1)
    rhs = egf_exp_linear(make(P, PREC, 2), 7) - 1
    assert lhs == rhs


def test_scale_arg_multiplicative():
    A = series([1, 2, 3, 4, 5])
    assert egf_scale_arg(egf_scale_arg(A, 3), 7) == egf_scale_arg(A, 21)


def test_scale_arg_rejects_nonpositive():
    with pytest.raises(DomainError):
        egf_scale_arg(series([1, 1]), 0)


def test_inv_requires_unit_constant():
    with pytest.raises(NotInvertible):
        egf_inv(series([5, 1, 1]))


def test_euler_egf_rejects_minus_one():
    with pytest.raises(NotInvertible):
        euler_egf(make(3, 4, 2), 3)


def test_constant_and_pow():
    like = make(P, PREC, 1)
    c = egf_constant(3, 4, like)
    assert c ** 2 == egf_constant(9, 4, like)
    assert c ** 0 == egf_constant(1, 4, like)


def test_prime_mismatch():
    with pytest.raises(DomainError):
        series([1, 1], p=5) + series([1, 1], p=7)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=8).filter(lambda v: v[0] % P != 0))
def test_inverse_property(values):
    A = series(values)
    prod = egf_mul(A, egf_inv(A))
    assert prod == egf_constant(1, A.order, like=make(P, prod.prec, 1))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-999, 999), min_size=4, max_size=4),
    st.lists(st.integers(-999, 999), min_size=4, max_size=4),
    st.lists(st.integers(-999, 999), min_size=4, max_size=4),
)
def test_mul_commutative_associative(a, b, c):
    A, B, C = series(a), series(b), series(c)
    assert egf_mul(A, B) == egf_mul(B, A)
    assert egf_mul(egf_mul(A, B), C) == egf_mul(A, egf_mul(B, C))


def test_euler_egf_lambda_one_low_order():
    # 2/(e^t+1) = 1 - t/2 + t^3/24 - ..., so coefficients 1, -1/2, 0, 1/4
    s = euler_egf(make(3, 6, 1), 3)
    assert list(s.coeffs) == [make(3, 6, v) for v in (1, Fraction(-1, 2), 0, Fraction(1, 4))]
