"""Truncated power series in one and two variables.

Coefficients live in any commutative ring containing the rationals that
supports ``+``, ``-``, ``*`` with ints/Fractions and ``1 / c`` for units
(``fractions.Fraction`` and :class:`quotloc.cyclotomic.CycloElement` both do).

Series are dense and immutable.  A product keeps the smaller truncation of
its operands.  Poles are never handled implicitly: dividing by ``x**k`` goes
through :meth:`UniSeries.shift_down`, which checks that the discarded
coefficients are exactly zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Sequence

__all__ = [
    "TruncationError",
    "PoleError",
    "UniSeries",
    "BiSeries",
    "series_invert",
    "coefficient",
    "residue_oracle",
]


class TruncationError(LookupError):
    """A coefficient beyond the truncation order was requested."""


class PoleError(ArithmeticError):
    """A pole failed to cancel, or a non-unit series was inverted."""


def _dot(xs: Sequence[Any], ys: Sequence[Any]) -> Any:
    # ys is read backwards: sum_i xs[i] * ys[-1 - i]
    it = iter(zip(xs, reversed(ys)))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


class UniSeries:
    """Univariate series ``sum c_i x^i`` known modulo ``x^(order + 1)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Any], order: int | None = None):
        coeffs = list(coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be non-negative")
            if len(coeffs) > order + 1:
                coeffs = coeffs[: order + 1]
            else:
                zero = coeffs[0] * 0 if coeffs else Fraction(0)
                coeffs += [zero] * (order + 1 - len(coeffs))
        if not coeffs:
            raise ValueError("empty series")
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c: Any, order: int) -> "UniSeries":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int, one: Any = Fraction(1)) -> "UniSeries":
        """The series ``x``."""
        return cls([one * 0, one], order)

    @classmethod
    def from_function(cls, f: Callable[[int], Any], order: int) -> "UniSeries":
        return cls([f(i) for i in range(order + 1)])

    def __repr__(self) -> str:
        return f"UniSeries({list(self.coeffs)!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> Any:
        return self.coefficient(i)

    def coefficient(self, i: int) -> Any:
        if i < 0:
            return self.coeffs[0] * 0
        if i > self.order:
            raise TruncationError(
                f"coefficient x^{i} requested from a series truncated at order {self.order}"
            )
        return self.coeffs[i]

    def truncate(self, order: int) -> "UniSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return UniSeries(self.coeffs[: order + 1])

    def __neg__(self) -> "UniSeries":
        return UniSeries([-c for c in self.coeffs])

    def __add__(self, other: Any) -> "UniSeries":
        if isinstance(other, UniSeries):
            n = min(self.order, other.order) + 1
            return UniSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])
        return UniSeries((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __sub__(self, other: Any) -> "UniSeries":
        return self + (-other)

    def __rsub__(self, other: Any) -> "UniSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "UniSeries":
        if isinstance(other, UniSeries):
            n = min(self.order, other.order) + 1
            a, b = self.coeffs, other.coeffs
            return UniSeries([_dot(a[: k + 1], b[: k + 1]) for k in range(n)])
        if isinstance(other, BiSeries):
            return NotImplemented
        return UniSeries([c * other for c in self.coeffs])

    def __rmul__(self, other: Any) -> "UniSeries":
        return UniSeries([other * c for c in self.coeffs])

    def __truediv__(self, other: Any) -> "UniSeries":
        if isinstance(other, UniSeries):
            return self * series_invert(other)
        inv = 1 / other
        return UniSeries([c * inv for c in self.coeffs])

    def __pow__(self, e: int) -> "UniSeries":
        if e < 0:
            return series_invert(self) ** (-e)
        result = UniSeries.constant(self.coeffs[0] * 0 + 1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_down(self, k: int) -> "UniSeries":
        """Divide by ``x^k``; the first ``k`` coefficients must vanish exactly.

        The result has order ``self.order - k``.
        """
        if k > self.order:
            raise TruncationError(f"cannot divide order-{self.order} series by x^{k}")
        for i in range(k):
            if self.coeffs[i] != 0:
                raise PoleError(f"coefficient of x^{i} is {self.coeffs[i]!r}, expected 0")
        return UniSeries(self.coeffs[k:])

    def shift_up(self, k: int) -> "UniSeries":
        """Multiply by ``x^k`` keeping the truncation order."""
        zero = self.coeffs[0] * 0
        if k > self.order:
            return UniSeries([zero] * (self.order + 1))
        return UniSeries([zero] * k + list(self.coeffs[: self.order + 1 - k]))

    def compose_linear(self, c: Any) -> "UniSeries":
        """Substitute ``x -> c*x``."""
        out, p = [], None
        for i, a in enumerate(self.coeffs):
            p = c ** i if p is None else p * c
            out.append(a * p)
        return UniSeries(out)

    def map(self, f: Callable[[Any], Any]) -> "UniSeries":
        return UniSeries([f(c) for c in self.coeffs])

    def invert(self) -> "UniSeries":
        return series_invert(self)


class BiSeries:
    """Bivariate series ``sum c_ij x^i y^j`` truncated at ``i <= T1, j <= T2``."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Any]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("empty series")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged coefficient array")
        self.rows = rows

    @property
    def orders(self) -> tuple[int, int]:
        return len(self.rows) - 1, len(self.rows[0]) - 1

    @classmethod
    def zeros(cls, orders: tuple[int, int], zero: Any = Fraction(0)) -> "BiSeries":
        t1, t2 = orders
        return cls([[zero] * (t2 + 1) for _ in range(t1 + 1)])

    @classmethod
    def constant(cls, c: Any, orders: tuple[int, int]) -> "BiSeries":
        s = cls.zeros(orders, c * 0)
        rows = [list(r) for r in s.rows]
        rows[0][0] = c
        return cls(rows)

    @classmethod
    def outer(cls, u: UniSeries, v: UniSeries) -> "BiSeries":
        """The separable series ``u(x) * v(y)``."""
        return cls([[a * b for b in v.coeffs] for a in u.coeffs])

    @classmethod
    def from_x(cls, u: UniSeries, order_y: int) -> "BiSeries":
        zero = u.coeffs[0] * 0
        return cls([[a] + [zero] * order_y for a in u.coeffs])

    @classmethod
    def from_y(cls, v: UniSeries, order_x: int) -> "BiSeries":
        zero = v.coeffs[0] * 0
        return cls([list(v.coeffs)] + [[zero] * len(v.coeffs) for _ in range(order_x)])

    def __repr__(self) -> str:
        return f"BiSeries({[list(r) for r in self.rows]!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiSeries):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def coefficient(self, i: int, j: int) -> Any:
        t1, t2 = self.orders
        if i < 0 or j < 0:
            return self.rows[0][0] * 0
        if i > t1 or j > t2:
            raise TruncationError(
                f"coefficient x^{i} y^{j} requested from a series truncated at {self.orders}"
            )
        return self.rows[i][j]

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        return self.coefficient(*ij)

    def truncate(self, orders: tuple[int, int]) -> "BiSeries":
        t1, t2 = orders
        if t1 > self.orders[0] or t2 > self.orders[1]:
            raise TruncationError(f"cannot extend {self.orders} to {orders}")
        return BiSeries([r[: t2 + 1] for r in self.rows[: t1 + 1]])

    def _common(self, other: "BiSeries") -> tuple["BiSeries", "BiSeries"]:
        t = (min(self.orders[0], other.orders[0]), min(self.orders[1], other.orders[1]))
        a = self if self.orders == t else self.truncate(t)
        b = other if other.orders == t else other.truncate(t)
        return a, b

    def __neg__(self) -> "BiSeries":
        return BiSeries([[-c for c in r] for r in self.rows])

    def __add__(self, other: Any) -> "BiSeries":
        if isinstance(other, BiSeries):
            a, b = self._common(other)
            return BiSeries([[p + q for p, q in zip(r, s)] for r, s in zip(a.rows, b.rows)])
        rows = [list(r) for r in self.rows]
        rows[0][0] = rows[0][0] + other
        return BiSeries(rows)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "BiSeries":
        return self + (-other)

    def __rsub__(self, other: Any) -> "BiSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "BiSeries":
        if isinstance(other, BiSeries):
            a, b = self._common(other)
            t1, t2 = a.orders
            out = []
            for i in range(t1 + 1):
                row = []
                for j in range(t2 + 1):
                    acc = None
                    for p in range(i + 1):
                        ar, br = a.rows[p], b.rows[i - p]
                        for q in range(j + 1):
                            term = ar[q] * br[j - q]
                            acc = term if acc is None else acc + term
                    row.append(acc)
                out.append(row)
            return BiSeries(out)
        return BiSeries([[c * other for c in r] for r in self.rows])

    def __rmul__(self, other: Any) -> "BiSeries":
        return BiSeries([[other * c for c in r] for r in self.rows])

    def __truediv__(self, other: Any) -> "BiSeries":
        if isinstance(other, BiSeries):
            return self * series_invert(other)
        inv = 1 / other
        return BiSeries([[c * inv for c in r] for r in self.rows])

    def __pow__(self, e: int) -> "BiSeries":
        if e < 0:
            return series_invert(self) ** (-e)
        result = BiSeries.constant(self.rows[0][0] * 0 + 1, self.orders)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_outer(self, u: UniSeries, v: UniSeries) -> "BiSeries":
        """Multiply by the separable series ``u(x) * v(y)``.

        Cheaper than building the outer product first: two one-dimensional
        convolutions instead of one two-dimensional one.
        """
        t1, t2 = self.orders
        if u.order < t1 or v.order < t2:
            raise TruncationError("separable factor is truncated below the series orders")
        uc, vc = u.coeffs, v.coeffs
        rows = [
            [_dot(r[: j + 1], vc[: j + 1]) for j in range(t2 + 1)] for r in self.rows
        ]
        cols = list(zip(*rows))
        out_cols = [[_dot(c[: i + 1], uc[: i + 1]) for i in range(t1 + 1)] for c in cols]
        return BiSeries(list(zip(*out_cols)))

    def map(self, f: Callable[[Any], Any]) -> "BiSeries":
        return BiSeries([[f(c) for c in r] for r in self.rows])

    def invert(self) -> "BiSeries":
        return series_invert(self)


def series_invert(s: UniSeries | BiSeries) -> UniSeries | BiSeries:
    """Multiplicative inverse up to truncation; the constant term must be a unit."""
    if isinstance(s, UniSeries):
        c0 = s.coeffs[0]
        if c0 == 0:
            raise PoleError("series with zero constant term is not invertible")
        inv0 = 1 / c0
        out = [inv0]
        for k in range(1, s.order + 1):
            acc = _dot(s.coeffs[1 : k + 1], out[:k])
            out.append(-(acc * inv0))
        return UniSeries(out)
    if isinstance(s, BiSeries):
        c0 = s.rows[0][0]
        if c0 == 0:
            raise PoleError("series with zero constant term is not invertible")
        inv0 = 1 / c0
        t1, t2 = s.orders
        out = [[None] * (t2 + 1) for _ in range(t1 + 1)]
        for i in range(t1 + 1):
            for j in range(t2 + 1):
                if i == 0 and j == 0:
                    out[0][0] = inv0
                    continue
                acc = None
                for p in range(i + 1):
                    sr, orow = s.rows[p], out[i - p]
                    for q in range(j + 1):
                        if p == 0 and q == 0:
                            continue
                        term = sr[q] * orow[j - q]
                        acc = term if acc is None else acc + term
                out[i][j] = -(acc * inv0)
        return BiSeries(out)
    raise TypeError(f"not a series: {type(s).__name__}")


def coefficient(s: UniSeries | BiSeries, exponents: int | tuple[int, ...]) -> Any:
    """Exact coefficient; raises :class:`TruncationError` past the truncation."""
    if isinstance(exponents, int):
        exponents = (exponents,)
    if isinstance(s, UniSeries):
        (i,) = exponents
        return s.coefficient(i)
    i, j = exponents
    return s.coefficient(i, j)


def binomial_series(z: Any, order: int) -> UniSeries:
    """``(1 + x)^z`` for rational ``z``."""
    out, c = [], Fraction(1)
    for k in range(order + 1):
        out.append(c)
        c = c * (z - k) / (k + 1)
    return UniSeries(out)


def residue_oracle(a: int, b: int, c: int, N: int) -> Fraction:
    """Brute-force ``Res_{x=0} x^a (1+x)^(N-1+b) / ((1+x)^N - 1)^(c+1)``.

    The denominator is ``x^(c+1) * u(x)^(c+1)`` with ``u`` a unit, so the
    residue is the ``x^c`` coefficient of ``x^a (1+x)^(N-1+b) u^-(c+1)``.
    """
    if a < 0 or c < 0 or N < 1:
        raise ValueError("need a >= 0, c >= 0, N >= 1")
    order = a + c + 2
    # (1+x)^N - 1, whose constant term vanishes, divided by x
    p = binomial_series(N, order + 1) - 1
    unit = p.shift_down(1)
    num = binomial_series(N - 1 + b, order).shift_up(a)
    integrand = num * unit.truncate(order) ** (-(c + 1))
    return integrand.coefficient(c)
