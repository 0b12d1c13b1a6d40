from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from swkahler import DomainError
from swkahler.series import (
    ONE,
    THETA,
    X,
    BiPoly,
    TruncatedSeries,
    binom_pow,
    binomial,
    coeff_t,
    compose,
    eval_symmetric_product,
    exp_series,
    mul,
    substitute_acgh,
)

from _oracles import acgh_sympy, sympy_binomial, th, x


def to_sympy(p: BiPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * x**i * th**j for (i, j), c in p.items()), sympy.Integer(0))


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(0, 0) == 1
    assert binomial(-3, 2) == 6
    with pytest.raises(DomainError):
        binomial(3, -1)


@pytest.mark.parametrize("n", range(-8, 9))
@pytest.mark.parametrize("k", range(0, 7))
def test_binomial_matches_sympy(n, k):
    assert binomial(n, k) == sympy_binomial(n, k)


def test_mul_examples():
    a = TruncatedSeries([ONE, X, X * X], 2)
    assert mul(a, TruncatedSeries.one(2)) == a
    assert mul(TruncatedSeries([1, X], 2), TruncatedSeries([1, -X], 2)) == TruncatedSeries([1, 0, -(X * X)], 2)
    assert mul(TruncatedSeries([1, -X], 2), a) == TruncatedSeries.one(2)


def test_mul_truncates_to_smaller_order():
    assert mul(TruncatedSeries([1, X, X], 2), TruncatedSeries([1, X], 1)).order == 1


def test_binom_pow_examples():
    assert binom_pow(X, 0, 3) == TruncatedSeries.one(3)
    assert binom_pow(X, -1, 2) == TruncatedSeries([1, -X, X * X], 2)
    assert binom_pow(X, 3, 2) == TruncatedSeries([1, 3 * X, 3 * (X * X)], 2)


def test_exp_examples():
    assert exp_series(BiPoly(), 4) == TruncatedSeries.one(4)
    assert exp_series(-THETA, 2) == TruncatedSeries([1, -THETA, Fraction(1, 2) * (THETA * THETA)], 2)
    for order in range(6):
        assert mul(exp_series(THETA, order), exp_series(-THETA, order)) == TruncatedSeries.one(order)


def test_exp_rejects_constant_term():
    with pytest.raises(DomainError):
        exp_series(TruncatedSeries([1, X], 2), 2)


def test_coeff_t_examples():
    assert coeff_t(TruncatedSeries([1, X], 1), 1) == X
    assert coeff_t(exp_series(-THETA, 2), 2) == Fraction(1, 2) * THETA * THETA
    s = mul(TruncatedSeries([1, -X], 2), exp_series(-THETA, 2))
    assert coeff_t(s, 2) == Fraction(1, 2) * THETA * THETA + X * THETA
    with pytest.raises(DomainError):
        coeff_t(s, 3)


def test_eval_symmetric_product_examples():
    for g in range(5):
        assert eval_symmetric_product(BiPoly.monomial(4, 0), 4, g) == 1
    assert eval_symmetric_product(THETA * THETA, 2, 3) == 6
    assert eval_symmetric_product(X * THETA, 2, 1) == 1
    # wrong total degree integrates to zero
    assert eval_symmetric_product(X, 2, 3) == 0


def test_printing_is_canonical():
    p = BiPoly({(0, 1): -1, (1, 0): 1, (0, 0): Fraction(1, 2)})
    assert str(p) == "1/2 - th + x"
    assert str(p) == str(BiPoly({(1, 0): 1, (0, 0): Fraction(1, 2), (0, 1): -1}))
    assert str(TruncatedSeries([1, -X], 1)) == "(1) + (-x)*t^1"


def test_compose_against_sympy():
    f = TruncatedSeries([1, 2, Fraction(1, 3), -1], 3)
    u = mul(TruncatedSeries.linear(ONE, 3), binom_pow(X, -1, 3))  # t/(1+xt)
    got = compose(f, u)
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c) * (t / (1 + x * t)) ** k for k, c in enumerate([1, 2, sympy.Rational(1, 3), -1]))
    ser = sympy.series(expr, t, 0, 4).removeO()
    for m in range(4):
        assert sympy.expand(to_sympy(got.coeffs[m]) - ser.coeff(t, m)) == 0


def test_acgh_examples():
    assert substitute_acgh(TruncatedSeries.one(0), 0, 0) == (ONE, ONE)
    assert substitute_acgh(TruncatedSeries.one(1), 2, 1) == (2 * X, 2 * X)
    d, g, chi = 2, 1, 1
    lhs, rhs = substitute_acgh(exp_series(-THETA, d), d + 1 - g - chi, d)
    assert lhs == rhs


def test_acgh_errors():
    with pytest.raises(DomainError):
        substitute_acgh(TruncatedSeries.one(1), 0, 2)


@pytest.mark.parametrize("coeffs, a, b", [([1], -2, 3), ([1, 3, "1/2"], -3, 4), ([0, 1, 0, -2], 4, 3)])
def test_acgh_against_sympy(coeffs, a, b):
    f = TruncatedSeries([Fraction(c) for c in coeffs], b)
    lhs, rhs = substitute_acgh(f, a, b)
    slhs, srhs = acgh_sympy(coeffs, a, b)
    assert sympy.expand(to_sympy(lhs) - slhs) == 0
    assert sympy.expand(to_sympy(rhs) - srhs) == 0


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
bipolys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), rationals, max_size=3
).map(BiPoly)


def series_of(order):
    return st.lists(bipolys, min_size=order + 1, max_size=order + 1).map(lambda cs: TruncatedSeries(cs, order))


@settings(max_examples=60, deadline=None)
@given(series_of(3), series_of(3), series_of(3))
def test_ring_axioms(a, b, c):
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


@settings(max_examples=60, deadline=None)
@given(bipolys, bipolys, st.integers(0, 4))
def test_exp_is_multiplicative(a, b, order):
    assert exp_series(a + b, order) == mul(exp_series(a, order), exp_series(b, order))


@settings(max_examples=60, deadline=None)
@given(bipolys, st.integers(-6, 6), st.integers(0, 5))
def test_binom_pow_inverse(c, a, order):
    assert mul(binom_pow(c, a, order), binom_pow(c, -a, order)) == TruncatedSeries.one(order)


@pytest.mark.parametrize("a", range(0, 11))
@pytest.mark.parametrize("b", range(0, 11))
def test_vandermonde(a, b):
    for c in range(a + b + 1):
        assert sum(binomial(a, j) * binomial(b, c - j) for j in range(c + 1)) == comb(a + b, c)
