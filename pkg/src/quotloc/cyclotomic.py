"""Exact arithmetic in the cyclotomic field Q(zeta_N), N an odd prime.

An element is ``(c_0 + c_1 t + ... + c_{N-2} t^{N-2}) / den`` with integer
``c_i`` and positive ``den`` in lowest terms, modulo ``1 + t + ... + t^(N-1)``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Any, Sequence

from .exact import Convention, bernoulli
from .series import UniSeries, binomial_series

__all__ = [
    "CycloField",
    "CycloElement",
    "cyclo_inv",
    "RootSumAlgorithm",
    "root_sum",
    "lemma_bern_limit",
    "is_odd_prime",
]


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CycloField:
    """Q[t] / (1 + t + ... + t^(N-1)); use :meth:`of` to get the shared instance."""

    __slots__ = ("N", "degree", "_one", "_zero")

    def __init__(self, N: int):
        if not is_odd_prime(N):
            raise ValueError(f"N must be an odd prime, got {N}")
        self.N = N
        self.degree = N - 1
        self._one = CycloElement(self, (1,) + (0,) * (N - 2), 1, _normalized=True)
        self._zero = CycloElement(self, (0,) * (N - 1), 1, _normalized=True)

    @staticmethod
    @lru_cache(maxsize=None)
    def of(N: int) -> "CycloField":
        return CycloField(N)

    def __repr__(self) -> str:
        return f"CycloField({self.N})"

    def __reduce__(self):
        return (CycloField.of, (self.N,))

    @property
    def one(self) -> "CycloElement":
        return self._one

    @property
    def zero(self) -> "CycloElement":
        return self._zero

    def zeta(self, j: int = 1) -> "CycloElement":
        """``zeta^j``."""
        return self.from_cyclic({j % self.N: 1})

    def from_cyclic(self, terms: dict[int, Any]) -> "CycloElement":
        """Element ``sum_k terms[k] t^k`` with exponents taken mod N."""
        N = self.N
        full = [Fraction(0)] * N
        for k, v in terms.items():
            full[k % N] += Fraction(v)
        top = full[N - 1]
        return self.element([c - top for c in full[: N - 1]])

    def element(self, coords: Sequence[Any]) -> "CycloElement":
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        fr = [Fraction(c) for c in coords]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return CycloElement(self, tuple(int(c * den) for c in fr), den)

    def rational(self, q: Any) -> "CycloElement":
        q = Fraction(q)
        return CycloElement(self, (q.numerator,) + (0,) * (self.N - 2), q.denominator)


class CycloElement:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: CycloField, num: tuple[int, ...], den: int, _normalized: bool = False):
        if not _normalized:
            if den < 0:
                num, den = tuple(-c for c in num), -den
            g = gcd(den, *num)
            if g != 1:
                num, den = tuple(c // g for c in num), den // g
        self.field = field
        self.num = num
        self.den = den

    # construction helpers -------------------------------------------------

    def _new(self, num: list[int] | tuple[int, ...], den: int) -> "CycloElement":
        return CycloElement(self.field, tuple(num), den)

    def _coerce(self, other: Any) -> "CycloElement | None":
        if isinstance(other, CycloElement):
            if other.field is not self.field and other.field.N != self.field.N:
                raise ValueError("elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"<Q(z_{self.field.N}): {body}>"

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.field.N, self.num, self.den))

    def __bool__(self) -> bool:
        return any(self.num)

    def __reduce__(self):
        return (CycloElement, (self.field, self.num, self.den, True))

    # arithmetic -------------------------------------------------------------

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.field, tuple(-c for c in self.num), self.den, True)

    def __add__(self, other: Any) -> "CycloElement":
        if isinstance(other, int):
            num = list(self.num)
            num[0] += other * self.den
            return CycloElement(self.field, tuple(num), self.den, True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self.den, o.den
        if d1 == d2:
            return self._new([a + b for a, b in zip(self.num, o.num)], d1)
        g = gcd(d1, d2)
        f1, f2 = d2 // g, d1 // g
        return self._new([a * f1 + b * f2 for a, b in zip(self.num, o.num)], d1 * f1)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "CycloElement":
        return self + (-other)

    def __rsub__(self, other: Any) -> "CycloElement":
        return (-self) + other

    def __mul__(self, other: Any) -> "CycloElement":
        if isinstance(other, CycloElement):
            N = self.field.N
            a, b = self.num, other.num
            full = [0] * N
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            k = i + j
                            if k >= N:
                                k -= N
                            full[k] += x * y
            top = full[N - 1]
            if top:
                num = [c - top for c in full[: N - 1]]
            else:
                num = full[: N - 1]
            return self._new(num, self.den * other.den)
        if isinstance(other, int):
            return self._new([c * other for c in self.num], self.den)
        if isinstance(other, Fraction):
            p, q = other.numerator, other.denominator
            return self._new([c * p for c in self.num], self.den * q)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        return cyclo_inv(self)

    def __truediv__(self, other: Any) -> "CycloElement":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            q = Fraction(other)
            return self * (1 / q)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * cyclo_inv(o)

    def __rtruediv__(self, other: Any) -> "CycloElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * cyclo_inv(self)

    def __pow__(self, e: int) -> "CycloElement":
        if e < 0:
            return cyclo_inv(self) ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def galois(self, r: int) -> "CycloElement":
        """Image under the automorphism ``zeta -> zeta^r`` (``r`` prime to N)."""
        N = self.field.N
        if r % N == 0:
            raise ValueError("r must be prime to N")
        full = [0] * N
        for i, c in enumerate(self.num):
            full[(i * r) % N] += c
        top = full[N - 1]
        return self._new([c - top for c in full[: N - 1]], self.den)

    def trace(self) -> Fraction:
        """Sum of all N-1 conjugates."""
        N = self.field.N
        # Tr(1) = N - 1, Tr(t^i) = -1 for 0 < i < N
        s = self.num[0] * (N - 1) - sum(self.num[1:])
        return Fraction(s, self.den)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def cyclo_inv(x: CycloElement) -> CycloElement:
    """Inverse via the extended Euclidean algorithm against the cyclotomic polynomial."""
    if not x:
        raise ZeroDivisionError("zero has no inverse in Q(zeta)")
    if x.is_rational():
        return x.field.rational(1 / x.to_rational())
    N = x.field.N
    modulus = [Fraction(1)] * N
    a = list(x.coords)
    while a and a[-1] == 0:
        a.pop()
    # invariant: s_i * x == r_i  (mod modulus)
    r0, r1 = modulus, a
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    # r1 is a nonzero constant since the modulus is irreducible
    c = r1[0]
    _, s = _poly_divmod(s1, modulus)
    coords = [v / c for v in s] + [Fraction(0)] * (N - 1 - len(s))
    return x.field.element(coords)


class RootSumAlgorithm(enum.Enum):
    DIRECT = "direct"
    GENERATING = "generating"


def _root_sum_direct(e: int, k: int, N: int) -> Fraction:
    F = CycloField.of(N)
    z = F.zeta(1)
    base = F.zeta(e) * (1 - z) ** (-k)
    total = F.zero
    for r in range(1, N):
        total = total + base.galois(r)
    if not total.is_rational():
        raise ArithmeticError(f"root sum over Q(zeta_{N}) came out irrational: {total!r}")
    return total.to_rational()


@lru_cache(maxsize=4096)
def _root_sum_generating(e: int, k: int, N: int) -> Fraction:
    if k < 1:
        raise ValueError("the generating-function route needs k >= 1")
    # sum_{zeta^N=1} zeta^e/(w - zeta) = N w^(e-1)/(w^N - 1) needs 1 <= e <= N
    e = (e - 1) % N + 1
    order = k - 1
    # (1-z)^N - 1 = z * Q(z), Q(0) = -N
    Q = (binomial_series(N, order + 2).compose_linear(-1) - 1).shift_down(1)
    num = binomial_series(e - 1, order + 1).compose_linear(-1) * N + Q
    # [N(1-z)^(e-1) + Q(z)] / (z Q(z)); the numerator vanishes at z = 0
    regular = num.shift_down(1) * Q.truncate(order) ** -1
    return regular.coefficient(order)


def root_sum(
    e: int, k: int, N: int, algorithm: RootSumAlgorithm = RootSumAlgorithm.GENERATING
) -> Fraction:
    """``sum_{zeta^N = 1, zeta != 1} zeta^e / (1 - zeta)^k`` as an exact rational.

    ``GENERATING`` reads the ``z^(k-1)`` coefficient of
    ``1/z + N (1-z)^(e-1) / ((1-z)^N - 1)`` and falls back to ``DIRECT`` for
    ``k <= 0``.  ``DIRECT`` sums the Galois conjugates and needs N prime.
    """
    if algorithm is RootSumAlgorithm.DIRECT or k <= 0:
        if algorithm is RootSumAlgorithm.GENERATING and not is_odd_prime(N):
            return _root_sum_small_k(e, k, N)
        return _root_sum_direct(e, k, N)
    return _root_sum_generating(e, k, N)


def _root_sum_small_k(e: int, k: int, N: int) -> Fraction:
    # k <= 0: expand (1 - zeta)^(-k) and use sum_{zeta != 1} zeta^j = N[N | j] - 1
    total = Fraction(0)
    for i in range(-k + 1):
        j = e + i
        s = (N if j % N == 0 else 0) - 1
        total += (-1) ** i * comb(-k, i) * s
    return total


def lemma_bern_limit(k: int) -> Fraction:
    """``(1 - 2^(1-k)) B_k / k!``; 0 for ``k < 0`` and -1 at ``k = 0``."""
    if k < 0:
        return Fraction(0)
    factor = 1 - Fraction(2) ** (1 - k)
    if factor == 0:
        return Fraction(0)
    b = bernoulli(k, Convention.STANDARD)
    f = 1
    for i in range(2, k + 1):
        f *= i
    return factor * b / f
