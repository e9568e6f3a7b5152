"""Exact rational primitives: generalized binomials, Bernoulli numbers and a few
classical finite-sum identities.

Rationals are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction
from math import comb, factorial
from typing import Union

from .series import UniSeries, series_invert

__all__ = [
    "Rational",
    "Convention",
    "BernoulliTable",
    "binom_general",
    "bernoulli",
    "euler_alt_sum",
    "binom_poly_coeffs",
    "vandermonde_sum",
    "as_rational",
]

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def as_rational(z: RationalLike) -> Fraction:
    return z if isinstance(z, Fraction) else Fraction(z)


def binom_general(z: RationalLike, b: int) -> Fraction:
    """``z (z-1) ... (z-b+1) / b!`` for rational ``z``; zero when ``b < 0``."""
    if b < 0:
        return Fraction(0)
    z = as_rational(z)
    if z.denominator == 1 and z >= 0:
        return Fraction(comb(int(z), b))
    num = Fraction(1)
    for i in range(b):
        num *= z - i
    return num / factorial(b)


class Convention(enum.Enum):
    """Normalisation of the Bernoulli numbers.

    ``PAPER_SINH`` reads them off ``-u/sinh u = sum (2^k - 2)/k! B_k u^k``,
    which leaves ``B_1`` undetermined.  ``STANDARD`` uses ``u/(e^u - 1)``.
    """

    PAPER_SINH = "paper-sinh"
    STANDARD = "standard"


def _sinh_series(order: int) -> UniSeries:
    # -u / sinh u = -1 / (sinh(u)/u)
    coeffs = [
        Fraction(1, factorial(k + 1)) if k % 2 == 0 else Fraction(0)
        for k in range(order + 1)
    ]
    return -series_invert(UniSeries(coeffs))


def _standard_series(order: int) -> UniSeries:
    # u / (e^u - 1) = 1 / ((e^u - 1)/u)
    coeffs = [Fraction(1, factorial(k + 1)) for k in range(order + 1)]
    return series_invert(UniSeries(coeffs))


class BernoulliTable:
    """Memoized Bernoulli numbers, grown by doubling the series truncation."""

    def __init__(self, convention: Convention, initial: int = 16):
        self.convention = convention
        self.values: dict[int, Fraction] = {}
        self._size = -1
        self._lock = threading.Lock()
        self._grow(initial)

    def _grow(self, size: int) -> None:
        if self.convention is Convention.STANDARD:
            s = _standard_series(size)
            values = {k: s.coefficient(k) * factorial(k) for k in range(size + 1)}
        else:
            s = _sinh_series(size)
            values = {
                k: s.coefficient(k) * factorial(k) / (2**k - 2)
                for k in range(size + 1)
                if k != 1
            }
        self.values = values
        self._size = size

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("Bernoulli index must be non-negative")
        if k == 1 and self.convention is Convention.PAPER_SINH:
            raise ValueError(
                "B_1 is undetermined by -u/sinh u (its coefficient 2^1 - 2 vanishes)"
            )
        if k > self._size:
            with self._lock:
                size = max(self._size, 1)
                while size < k:
                    size *= 2
                if size > self._size:
                    self._grow(size)
        return self.values[k]

    @property
    def size(self) -> int:
        return self._size


_TABLES = {c: BernoulliTable(c) for c in Convention}


def bernoulli(k: int, convention: Convention = Convention.STANDARD) -> Fraction:
    """Exact Bernoulli number ``B_k``.

    >>> bernoulli(2), bernoulli(4, Convention.PAPER_SINH)
    (Fraction(1, 6), Fraction(-1, 30))
    """
    return _TABLES[convention][k]


def euler_alt_sum(alpha: int, i: int) -> Fraction:
    """``sum_p p^i C(alpha, p) (-1)^(alpha - p)``, an ``alpha``-th finite difference of ``p^i``."""
    total = 0
    for p in range(alpha + 1):
        term = p**i * comb(alpha, p)
        total += -term if (alpha - p) % 2 else term
    return Fraction(total)


def binom_poly_coeffs(j: int) -> list[Fraction]:
    """Coefficients ``c(j, i)`` of ``C(x, j) = sum_i c(j, i) x^i``, lowest degree first."""
    poly = [Fraction(1)]
    for r in range(j):
        # multiply by (x - r)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= r * c
        poly = nxt
    f = factorial(j)
    return [c / f for c in poly]


def vandermonde_sum(a1: RationalLike, a: int, t: RationalLike, m: int) -> Fraction:
    """``sum_{b1 + b2 = a} C(a1, b1) C(a - a1, b2) (t + b1 - b2)^m``.

    Equals ``(t + 2 a1 - a)^m`` identically in ``a1`` and ``t`` when ``m <= a``.
    For ``m > a`` it generally does not: ``a = 0, m = 1`` gives ``t`` on the left.
    """
    a1, t = as_rational(a1), as_rational(t)
    a2 = a - a1
    total = Fraction(0)
    for b1 in range(a + 1):
        b2 = a - b1
        total += binom_general(a1, b1) * binom_general(a2, b2) * (t + b1 - b2) ** m
    return total
