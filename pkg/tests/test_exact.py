from fractions import Fraction
from math import comb, factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from quotloc.exact import (
    BernoulliTable,
    Convention,
    bernoulli,
    binom_general,
    binom_poly_coeffs,
    euler_alt_sum,
    vandermonde_sum,
)

from conftest import small_fractions


@pytest.mark.parametrize(
    "z, b, expected",
    [(Fraction(1, 2), 2, Fraction(-1, 8)), (7, 0, 1), (-1, 3, -1), (5, -1, 0), (3, 5, 0)],
)
def test_binom_examples(z, b, expected):
    assert binom_general(z, b) == expected


@given(z=small_fractions, b=st.integers(0, 7))
def test_binom_matches_sympy(z, b):
    assert binom_general(z, b) == Fraction(str(sp.binomial(sp.Rational(z.numerator, z.denominator), b)))


@given(z=small_fractions, h=st.fractions(min_value=1, max_value=3, max_denominator=5), b=st.integers(0, 5))
def test_binom_is_degree_b_polynomial(z, h, b):
    # (b+1)-th finite difference vanishes
    diff = sum((-1) ** (b + 1 - i) * comb(b + 1, i) * binom_general(z + i * h, b) for i in range(b + 2))
    assert diff == 0


@pytest.mark.parametrize("k, expected", [(0, 1), (2, Fraction(1, 6)), (3, 0), (4, Fraction(-1, 30))])
def test_bernoulli_sinh_examples(k, expected):
    assert bernoulli(k, Convention.PAPER_SINH) == expected


def test_bernoulli_sinh_refuses_index_one():
    with pytest.raises(ValueError):
        bernoulli(1, Convention.PAPER_SINH)


def test_bernoulli_standard_matches_sympy():
    for k in range(0, 31):
        if k == 1:
            assert bernoulli(1) == Fraction(-1, 2)
            continue
        assert bernoulli(k) == Fraction(str(sp.bernoulli(k))), k


def test_conventions_agree_on_even_and_odd_vanish():
    for k in range(0, 21, 2):
        assert bernoulli(k, Convention.PAPER_SINH) == bernoulli(k, Convention.STANDARD)
    for k in range(3, 21, 2):
        assert bernoulli(k, Convention.PAPER_SINH) == 0 == bernoulli(k)


def test_sinh_convention_defining_series():
    # -u/sinh u = sum (2^k - 2)/k! B_k u^k
    u = sp.symbols("u")
    ser = sp.series(-u / sp.sinh(u), u, 0, 16).removeO()
    for k in range(0, 16):
        if k == 1:
            continue
        lhs = Fraction(str(ser.coeff(u, k)))
        assert lhs == Fraction(2**k - 2, factorial(k)) * bernoulli(k, Convention.PAPER_SINH)


def test_table_grows_past_initial_size():
    t = BernoulliTable(Convention.STANDARD, initial=4)
    assert t[24] == Fraction(str(sp.bernoulli(24)))
    assert t.size > 24


@pytest.mark.parametrize("alpha, i, expected", [(2, 1, 0), (2, 2, 2), (1, 0, 0)])
def test_euler_examples(alpha, i, expected):
    assert euler_alt_sum(alpha, i) == expected


def test_euler_identities():
    for alpha in range(13):
        for i in range(alpha + 1):
            assert euler_alt_sum(alpha, i) == (factorial(alpha) if i == alpha else 0)


@pytest.mark.parametrize("j, expected", [(0, [1]), (1, [0, 1]), (2, [0, Fraction(-1, 2), Fraction(1, 2)])])
def test_binom_poly_examples(j, expected):
    assert binom_poly_coeffs(j) == expected


@pytest.mark.parametrize("j", range(8))
def test_binom_poly_reproduces_binomials(j):
    c = binom_poly_coeffs(j)
    for n in range(2 * j + 1):
        assert sum(ci * n**i for i, ci in enumerate(c)) == comb(n, j)


@pytest.mark.parametrize(
    "a1, a, t, m, expected", [(Fraction(1, 2), 1, 3, 1, 3), (1, 2, 5, 2, 25), (Fraction(7, 3), 4, -2, 0, 1)]
)
def test_vandermonde_examples(a1, a, t, m, expected):
    assert vandermonde_sum(a1, a, t, m) == expected


@settings(max_examples=200)
@given(a1=small_fractions, t=small_fractions, data=st.data())
def test_vandermonde_identity_for_m_up_to_a(a1, t, data):
    a = data.draw(st.integers(0, 8))
    m = data.draw(st.integers(0, a))
    assert vandermonde_sum(a1, a, t, m) == (t + 2 * a1 - a) ** m


def test_vandermonde_identity_does_not_extend_past_a():
    # with a = 0 the left side is just t^m
    assert vandermonde_sum(Fraction(1, 2), 0, 3, 1) == 3
    assert (3 + 2 * Fraction(1, 2)) ** 1 == 4
