"""Closed-form intersection numbers and the reduction to the Quot scheme.

``intersect_main`` is the Bernoulli formula for ``int_{N_g} alpha^m beta^n``;
``rhs_red`` is the value of the Quot-scheme integral that localization must
reproduce; ``asymptotic_sum`` is the large-N limit of the localization sum
before it is collapsed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .cyclotomic import lemma_bern_limit
from .exact import Convention, bernoulli, binom_general

__all__ = [
    "DegreeError",
    "IntersectionQuery",
    "intersect_main",
    "intersect_psi",
    "rhs_red",
    "final_chain",
    "asymptotic_sum",
    "multinomial_collapse",
    "jacobian_theta_integral",
    "reduction_prefactor",
    "admissible_exponents",
]


class DegreeError(ValueError):
    """The exponents do not give a top-degree class."""


def _ratio_factorial(m: int, k: int) -> Fraction:
    # m!/k!, with 1/k! = 0 for negative k
    if k < 0:
        return Fraction(0)
    return Fraction(factorial(m), factorial(k))


def intersect_main(g: int, m: int, n: int) -> Fraction:
    """``int_{N_g} alpha^m beta^n``.

    ``(-1)^g 2^(2g-2) m!/(m-g+1)! (2^(m-g+1) - 2) B_(m-g+1)``, zero when
    ``m - g + 1 < 0``.
    """
    if g < 1 or m < 0 or n < 0:
        raise DegreeError("need g >= 1 and non-negative exponents")
    if 2 * m + 4 * n != 6 * g - 6:
        raise DegreeError(f"2m + 4n = 6g - 6 violated: 2*{m} + 4*{n} != {6 * g - 6}")
    k = m - g + 1
    if k < 0:
        return Fraction(0)
    factor = 2**k - 2
    if factor == 0:
        return Fraction(0)
    value = 4 ** (g - 1) * _ratio_factorial(m, k) * factor * bernoulli(k, Convention.PAPER_SINH)
    return -value if g % 2 else value


@dataclass(frozen=True)
class IntersectionQuery:
    g: int
    m_alpha: int
    n_beta: int
    psi_pairs: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "psi_pairs", tuple(self.psi_pairs))
        if any(p not in (0, 1) for p in self.psi_pairs):
            raise DegreeError("psi multiplicities must be 0 or 1 (psi classes are odd)")
        if len(self.psi_pairs) > self.g:
            raise DegreeError(f"at most g={self.g} psi pairs")
        lhs = 2 * self.m_alpha + 4 * self.n_beta + 6 * self.p
        if lhs != 6 * self.g - 6:
            raise DegreeError(
                f"2m + 4n + 6p = 6g - 6 violated: {lhs} != {6 * self.g - 6}"
            )

    @property
    def p(self) -> int:
        return sum(self.psi_pairs)


def intersect_psi(query: IntersectionQuery) -> Fraction:
    """``int alpha^m beta^n prod (psi_k psi_{k+g})^(p_k)``, reduced to genus ``g - p``."""
    g = query.g - query.p
    if g < 1:
        # N_1 is a point; no room for further psi pairs
        raise DegreeError("psi reduction below genus 1")
    return intersect_main(g, query.m_alpha, query.n_beta)


def _check_red(g: int, m: int, n: int) -> None:
    if g < 1 or n < 0:
        raise DegreeError("need g >= 1 and n >= 0")
    if m + 2 * n != 4 * g - 3:
        raise DegreeError(f"m + 2n = 4g - 3 violated: {m} + 2*{n} != {4 * g - 3}")
    if m < g:
        raise DegreeError(f"m >= g violated: m={m}, g={g}")


def rhs_red(g: int, m: int, n: int) -> Fraction:
    """``(-1)^g (2^(m-1) - 2^(2g-1)) m!/(m-2g+1)! B_(m-2g+1)``."""
    _check_red(g, m, n)
    k = m - 2 * g + 1
    factor = 2 ** (m - 1) - 2 ** (2 * g - 1)
    if k < 0 or factor == 0:
        return Fraction(0)
    value = factor * _ratio_factorial(m, k) * bernoulli(k, Convention.PAPER_SINH)
    return -value if g % 2 else value


def final_chain(g: int, m: int) -> Fraction:
    """``2^(m-1) m!/(m-2g+1)! B_(m-2g+1) (1 - 2^(2g-m))``; ``rhs_red`` without the sign."""
    k = m - 2 * g + 1
    factor = 1 - Fraction(2) ** (2 * g - m)
    if k < 0 or factor == 0:
        return Fraction(0)
    return Fraction(2) ** (m - 1) * _ratio_factorial(m, k) * bernoulli(k, Convention.PAPER_SINH) * factor


def _binom_poly(shift: Fraction, b: int, sign: int = 1) -> list[Fraction]:
    """Coefficients of ``C(sign*x + shift, b)`` in ``x``, lowest degree first."""
    if b < 0:
        return []
    poly = [Fraction(1)]
    for r in range(b):
        # multiply by (sign*x + shift - r)
        c0 = shift - r
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * c0
            nxt[i + 1] += c * sign
        poly = nxt
    f = factorial(b)
    return [c / f for c in poly]


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def z_infinity(g: int, n: int, s: int, k: int) -> Fraction:
    """``C(E, k) B_(k-E)/(k-E)! (1 - 2^(E-k+1))`` with ``E = 2n - 2gbar + s``."""
    E = 2 * n - 2 * (g - 1) + s
    c = binom_general(E, k)
    if c == 0:
        return Fraction(0)
    return c * lemma_bern_limit(k - E)


def asymptotic_sum(g: int, m: int, n: int, d: int, check: bool = True) -> Fraction:
    """The ``N -> infinity`` form of the localization sum, before any collapse.

    ``1/2 sum m!/s! (d2-d1)^s prod_i 2^l_i C(g, l_i) k! [x^k] C(x + d/2 - l1, d1 - l1)
    C(-x + d/2 - l2, d2 - l2) z_inf(s, k)`` over ``d1 + d2 = d``, ``l1 + l2 + s = m``
    and ``k``.  With ``check`` the result is compared against :func:`final_chain`.
    """
    _check_red(g, m, n)
    half = Fraction(d, 2)
    total = Fraction(0)
    for d1 in range(d + 1):
        d2 = d - d1
        for s in range(m + 1):
            for l1 in range(min(g, m - s) + 1):
                l2 = m - s - l1
                if l2 > g or l1 > d1 or l2 > d2:
                    continue
                weight = Fraction(factorial(m), factorial(s)) * (d2 - d1) ** s
                weight *= 2 ** (l1 + l2) * comb(g, l1) * comb(g, l2)
                if weight == 0:
                    continue
                poly = _poly_mul(
                    _binom_poly(half - l1, d1 - l1), _binom_poly(half - l2, d2 - l2, sign=-1)
                )
                for k, coeff in enumerate(poly):
                    if coeff:
                        total += weight * factorial(k) * coeff * z_infinity(g, n, s, k)
    total /= 2
    if check and total != final_chain(g, m):
        raise ArithmeticError(
            f"asymptotic sum {total} != collapsed form {final_chain(g, m)} at g={g}, m={m}, d={d}"
        )
    return total


def multinomial_collapse(g: int, m: int) -> Fraction:
    """``sum_{l1 + l2 + s = m} C(g, l1) C(g, l2) C(m - 2g, s)``; always 1."""
    total = Fraction(0)
    for l1 in range(m + 1):
        for l2 in range(m - l1 + 1):
            s = m - l1 - l2
            total += comb(g, l1) * comb(g, l2) * binom_general(m - 2 * g, s)
    return total


def jacobian_theta_integral(g: int) -> int:
    """``int_J (4 theta)^g = 4^g g!``."""
    return 4**g * factorial(g)


def reduction_prefactor(g: int, m_alpha: int, n: int) -> tuple[int, Fraction]:
    """``(m, factor)`` with ``int_{N_g} alpha^m_alpha beta^n = factor * Quot integral``.

    Lifting to ``M_g`` introduces ``(1/4^g) C(m, g) int_J (4 theta)^g``; the
    passage to the projective bundle and then to Quot is factor-free.
    """
    if 2 * m_alpha + 4 * n != 6 * g - 6:
        raise DegreeError(f"2m + 4n = 6g - 6 violated: 2*{m_alpha} + 4*{n} != {6 * g - 6}")
    m = m_alpha + g
    lift = Fraction(comb(m, g) * jacobian_theta_integral(g), 4**g)
    factor = 1 / lift
    assert factor == Fraction(factorial(m_alpha), factorial(m))
    return m, factor


def admissible_exponents(g: int) -> list[tuple[int, int]]:
    """All ``(m_alpha, n)`` with ``2 m_alpha + 4n = 6g - 6`` and ``m_alpha >= g - 1``."""
    out = []
    for n in range((6 * g - 6) // 4 + 1):
        rest = 6 * g - 6 - 4 * n
        if rest % 2 == 0 and rest // 2 >= g - 1:
            out.append((rest // 2, n))
    return out
