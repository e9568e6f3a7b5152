from fractions import Fraction
from math import comb, factorial

import pytest
import sympy as sp

from quotloc.closedform import (
    DegreeError,
    IntersectionQuery,
    admissible_exponents,
    asymptotic_sum,
    final_chain,
    intersect_main,
    intersect_psi,
    jacobian_theta_integral,
    multinomial_collapse,
    reduction_prefactor,
    rhs_red,
)


def sympy_main(g, m):
    # independent evaluation with the standard Bernoulli numbers
    k = m - g + 1
    if k < 0 or k == 1:
        return Fraction(0)
    v = 4 ** (g - 1) * Fraction(factorial(m), factorial(k)) * (2**k - 2) * Fraction(str(sp.bernoulli(k)))
    return -v if g % 2 else v


@pytest.mark.parametrize("g, m, n, expected", [(1, 0, 0, 1), (2, 3, 0, 4), (2, 1, 1, -4), (3, 6, 0, 224)])
def test_main_examples(g, m, n, expected):
    assert intersect_main(g, m, n) == expected


@pytest.mark.parametrize("g", range(1, 7))
def test_main_against_sympy(g):
    for m, n in admissible_exponents(g):
        assert intersect_main(g, m, n) == sympy_main(g, m)


def test_main_degree_error():
    with pytest.raises(DegreeError, match="6g - 6"):
        intersect_main(2, 2, 0)


def test_psi_reduction():
    assert intersect_psi(IntersectionQuery(3, 3, 0, (1,))) == 4
    assert intersect_psi(IntersectionQuery(3, 3, 0, (0, 1, 0))) == 4
    assert intersect_psi(IntersectionQuery(2, 3, 0)) == intersect_main(2, 3, 0)


@pytest.mark.parametrize(
    "args", [(3, 3, 0, (2,)), (2, 3, 1), (3, 3, 0, (1, 0, 0, 0)), (3, 6, 0, (1,))]
)
def test_psi_query_errors(args):
    with pytest.raises(DegreeError):
        IntersectionQuery(*args)


@pytest.mark.parametrize("g, m, n, expected", [(1, 1, 0, 1), (2, 5, 0, 80), (2, 3, 1, -24), (3, 9, 0, 112896)])
def test_rhs_red_examples(g, m, n, expected):
    assert rhs_red(g, m, n) == expected


@pytest.mark.parametrize("g", range(1, 6))
def test_rhs_red_equals_signed_final_chain(g):
    for n in range(2 * g):
        m = 4 * g - 3 - 2 * n
        if m < g:
            continue
        assert rhs_red(g, m, n) == (-1) ** g * final_chain(g, m)


@pytest.mark.parametrize("g", range(1, 5))
def test_triangle(g):
    for m_alpha, n in admissible_exponents(g):
        m, factor = reduction_prefactor(g, m_alpha, n)
        assert m == m_alpha + g
        assert factor == Fraction(factorial(m_alpha), factorial(m))
        assert intersect_main(g, m_alpha, n) == factor * rhs_red(g, m, n)


@pytest.mark.parametrize("g, m, n", [(1, 1, 0), (2, 5, 0), (2, 3, 1), (3, 9, 0), (3, 5, 2)])
def test_asymptotic_sum_d_independent(g, m, n):
    values = {asymptotic_sum(g, m, n, d) for d in (2 * g - 1, 2 * g + 1, 2 * g + 3)}
    assert values == {(-1) ** g * rhs_red(g, m, n)}


def test_multinomial_collapse():
    for g in range(5):
        for m in range(13):
            assert multinomial_collapse(g, m) == 1


def test_jacobian_integral_and_lift():
    for g in range(1, 6):
        assert jacobian_theta_integral(g) == 4**g * factorial(g)
        m = 2 * g
        assert Fraction(comb(m, g) * jacobian_theta_integral(g), 4**g) == Fraction(factorial(m), factorial(m - g))


def test_admissible_exponents():
    assert admissible_exponents(1) == [(0, 0)]
    assert admissible_exponents(3) == [(6, 0), (4, 1), (2, 2)]
