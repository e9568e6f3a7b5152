"""Top intersections on Sym^d1 C x Sym^d2 C.

On ``Sym^d C`` the only input needed is ``x^(d-l) theta^l = g!/(g-l)!`` for
``l <= g`` (zero otherwise).  Integrands are :class:`ThetaSeries`: polynomials
in ``theta_1, theta_2`` of degree at most ``g`` in each, with bivariate series
coefficients in ``x_1, x_2``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Any, Iterable

from .cyclotomic import CycloElement
from .series import BiSeries, UniSeries

__all__ = [
    "ThetaSeries",
    "integrate_sym_monomial",
    "shifted_power",
    "power_minus_one",
    "log_derivative_series",
    "theta_exp_terms",
    "theta_exp_direct",
    "theta_exp_closed",
    "integrate_fixed_locus",
    "integrate_product",
]


def integrate_sym_monomial(g: int, d: int, p: int, q: int) -> Fraction:
    """``int_{Sym^d C} x^p theta^q`` on a genus-``g`` curve."""
    if p < 0 or q < 0:
        raise ValueError("exponents must be non-negative")
    if p + q != d or q > g:
        return Fraction(0)
    return Fraction(factorial(g), factorial(g - q))


class ThetaSeries:
    """``sum_{q1, q2} theta_1^q1 theta_2^q2 * entries[q1, q2](x_1, x_2)``.

    Terms with ``q_i > cap`` are dropped on multiplication; the cap defaults to
    the genus, which is harmless because such terms integrate to zero.
    """

    __slots__ = ("entries", "genus", "degrees", "cap")

    def __init__(
        self,
        entries: dict[tuple[int, int], BiSeries],
        genus: int,
        degrees: tuple[int, int],
        cap: int | None = None,
    ):
        self.genus = genus
        self.degrees = tuple(degrees)
        self.cap = genus if cap is None else cap
        for (q1, q2), s in entries.items():
            if s.orders != self.degrees:
                raise ValueError(f"entry {(q1, q2)} has orders {s.orders}, expected {self.degrees}")
        self.entries = {k: v for k, v in entries.items() if k[0] <= self.cap and k[1] <= self.cap}

    @classmethod
    def scalar(cls, s: BiSeries, genus: int, cap: int | None = None) -> "ThetaSeries":
        return cls({(0, 0): s}, genus, s.orders, cap)

    @classmethod
    def theta(cls, which: int, genus: int, degrees: tuple[int, int], one: Any = 1, cap: int | None = None) -> "ThetaSeries":
        key = (1, 0) if which == 1 else (0, 1)
        return cls({key: BiSeries.constant(one, degrees)}, genus, degrees, cap)

    @classmethod
    def from_variable(
        cls, which: int, terms: Iterable[UniSeries], genus: int, degrees: tuple[int, int], cap: int | None = None
    ) -> "ThetaSeries":
        """``sum_k theta_i^k terms[k](x_i)`` for a single variable ``i``."""
        d1, d2 = degrees
        entries = {}
        for k, u in enumerate(terms):
            if which == 1:
                entries[(k, 0)] = BiSeries.from_x(u.truncate(d1), d2)
            else:
                entries[(0, k)] = BiSeries.from_y(u.truncate(d2), d1)
        return cls(entries, genus, degrees, cap)

    def __repr__(self) -> str:
        return f"ThetaSeries(genus={self.genus}, degrees={self.degrees}, keys={sorted(self.entries)})"

    def _like(self, entries: dict) -> "ThetaSeries":
        return ThetaSeries(entries, self.genus, self.degrees, self.cap)

    def __add__(self, other: "ThetaSeries") -> "ThetaSeries":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return self._like(out)

    def __neg__(self) -> "ThetaSeries":
        return self._like({k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "ThetaSeries") -> "ThetaSeries":
        return self + (-other)

    def __mul__(self, other: Any) -> "ThetaSeries":
        if isinstance(other, ThetaSeries):
            if other.degrees != self.degrees:
                raise ValueError("degree mismatch")
            cap = min(self.cap, other.cap)
            out: dict[tuple[int, int], BiSeries] = {}
            for (a1, a2), s in self.entries.items():
                for (b1, b2), t in other.entries.items():
                    key = (a1 + b1, a2 + b2)
                    if key[0] > cap or key[1] > cap:
                        continue
                    p = s * t
                    out[key] = out[key] + p if key in out else p
            return ThetaSeries(out, self.genus, self.degrees, cap)
        if isinstance(other, BiSeries):
            return self._like({k: v * other for k, v in self.entries.items()})
        return self._like({k: v * other for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ThetaSeries":
        if e < 0:
            raise ValueError("ThetaSeries powers must be non-negative")
        one = next(iter(self.entries.values())).rows[0][0] * 0 + 1
        result = ThetaSeries.scalar(BiSeries.constant(one, self.degrees), self.genus, self.cap)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def integrate_fixed_locus(f: ThetaSeries) -> Any:
    """Evaluate ``f`` on ``Sym^d1 C x Sym^d2 C``."""
    g = f.genus
    d1, d2 = f.degrees
    total = None
    for (q1, q2), s in sorted(f.entries.items()):
        if q1 > g or q2 > g or q1 > d1 or q2 > d2:
            continue
        w = Fraction(factorial(g), factorial(g - q1)) * Fraction(factorial(g), factorial(g - q2))
        term = s.coefficient(d1 - q1, d2 - q2) * w
        total = term if total is None else total + term
    if total is None:
        return Fraction(0)
    return total


def integrate_product(f: ThetaSeries, h: ThetaSeries) -> Any:
    """``integrate_fixed_locus(f * h)`` without forming the full product.

    Only the top coefficients of each product entry are computed.
    """
    if f.degrees != h.degrees:
        raise ValueError("degree mismatch")
    g = f.genus
    d1, d2 = f.degrees
    lim1, lim2 = min(g, d1), min(g, d2)
    total = None
    for (a1, a2), s in sorted(f.entries.items()):
        for (b1, b2), t in sorted(h.entries.items()):
            q1, q2 = a1 + b1, a2 + b2
            if q1 > lim1 or q2 > lim2:
                continue
            i, j = d1 - q1, d2 - q2
            acc = None
            for p in range(i + 1):
                sr, tr = s.rows[p], t.rows[i - p]
                for r in range(j + 1):
                    term = sr[r] * tr[j - r]
                    acc = term if acc is None else acc + term
            w = Fraction(factorial(g), factorial(g - q1)) * Fraction(factorial(g), factorial(g - q2))
            acc = acc * w
            total = acc if total is None else total + acc
    if total is None:
        return Fraction(0)
    return total


def shifted_power(lam: CycloElement, n: int, order: int) -> UniSeries:
    """``(lam + x)^n`` for an integer ``n``; negative ``n`` goes through inversion."""
    if n < 0:
        return shifted_power(lam, -n, order) ** -1
    zero = lam.field.zero
    return UniSeries([comb(n, r) * lam ** (n - r) if r <= n else zero for r in range(order + 1)])


def power_minus_one(lam: CycloElement, N: int, order: int) -> UniSeries:
    """``((lam + x)^N - 1) / x`` with the vanishing constant term cancelled.

    ``lam`` must be an N-th root of unity; the division by ``x`` is checked.
    """
    return (shifted_power(lam, N, order + 1) - 1).shift_down(1)


def log_derivative_series(lam: CycloElement, N: int, order: int) -> UniSeries:
    """``N (lam+x)^(N-1) / ((lam+x)^N - 1) - 1/x`` as a genuine power series.

    Over the common denominator ``x ((lam+x)^N - 1)`` the numerator
    ``N x (lam+x)^(N-1) - ((lam+x)^N - 1)`` vanishes to order two, as does the
    denominator; both are divided by ``x^2`` explicitly.
    """
    top = order + 2
    p = shifted_power(lam, N, top) - 1
    q = shifted_power(lam, N - 1, top).shift_up(1) * N
    num = (q - p).shift_down(2)
    den = p.shift_down(1)
    return num * den.truncate(order) ** -1


def theta_exp_terms(S: UniSeries, g: int) -> list[UniSeries]:
    """The finite expansion ``exp(theta S) = sum_{k <= g} theta^k S^k / k!``."""
    terms, power = [], None
    for k in range(g + 1):
        power = S ** 0 if power is None else power * S
        terms.append(power * Fraction(1, factorial(k)))
    return terms


def theta_exp_direct(g: int, l: int, S: UniSeries) -> UniSeries:
    """``theta^l / l! * exp(theta S)`` with ``theta^j`` replaced by ``g!/(g-j)! x^j``."""
    if l > g:
        return S * 0
    order = S.order
    x = UniSeries.variable(order, S.coeffs[0] * 0 + 1)
    total = None
    for k in range(g - l + 1):
        w = Fraction(factorial(g), factorial(l) * factorial(k) * factorial(g - l - k))
        term = (x ** (l + k)) * (S ** k) * w
        total = term if total is None else total + term
    return total


def theta_exp_closed(g: int, l: int, N: int, lam: CycloElement, order: int) -> UniSeries:
    """``N^(g-l) C(g, l) x^g (lam+x)^((N-1)(g-l)) / ((lam+x)^N - 1)^(g-l)``."""
    if l > g:
        raise ValueError("need l <= g")
    e = g - l
    unit = power_minus_one(lam, N, order)
    shifted = shifted_power(lam, (N - 1) * e, order)
    # x^g / x^(g-l) = x^l after cancelling the zero of the denominator
    body = shifted * unit ** (-e)
    return body.shift_up(l) * (Fraction(N) ** e * comb(g, l))
