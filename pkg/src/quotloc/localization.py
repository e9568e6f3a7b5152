"""Torus localization on the rank-2 Quot scheme.

The torus acts on ``O^N`` with weights the N-th roots of unity.  Fixed loci are
``Sym^d1 C x Sym^d2 C``, one per degree splitting ``d = d1 + d2`` and ordered
pair of distinct weights ``(zeta^j1, zeta^j2)``.  The equivariant parameter is
set to 1: every locus integrand is homogeneous of degree ``d1 + d2`` in
``(x, theta, h)``, so nothing is lost (see :func:`degree_audit`).

Two routes evaluate a locus contribution:

* route A expands the integrand as a :class:`~quotloc.symprod.ThetaSeries`
  over Q(zeta_N) and integrates it on the symmetric products;
* route B evaluates the closed combinatorial sum obtained after rescaling
  ``x_i = lambda_i xbar_i`` and applying the residue formula.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable

from .cyclotomic import CycloElement, CycloField, is_odd_prime
from .exact import binom_general
from .series import BiSeries, UniSeries
from .symprod import (
    ThetaSeries,
    integrate_fixed_locus,
    integrate_product,
    log_derivative_series,
    power_minus_one,
    shifted_power,
    theta_exp_terms,
)

__all__ = [
    "InvalidInstance",
    "ProblemInstance",
    "FixedLocus",
    "Route",
    "BNormalization",
    "enumerate_fixed_loci",
    "build_summand_A",
    "contribution_A",
    "summand_B",
    "quot_localized",
    "locus_total",
    "shift_invariance_check",
    "degree_audit",
]


class InvalidInstance(ValueError):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    """Parameters ``(g, m, n, N, d)`` of one localization computation.

    ``m + 2n = 4g - 3`` is the dimension constraint, and ``2M = N(d - 2gbar) - 1``
    fixes the power of ``a_2``.  The equivariant parameter ``h`` is 1.
    """

    g: int
    m: int
    n: int
    N: int
    d: int

    def __post_init__(self):
        g, m, n, N, d = self.g, self.m, self.n, self.N, self.d
        if g < 1:
            raise InvalidInstance(f"genus must be >= 1, got {g}")
        if m < 0 or n < 0:
            raise InvalidInstance("exponents m, n must be non-negative")
        if m + 2 * n != 4 * g - 3:
            raise InvalidInstance(f"m + 2n = 4g - 3 violated: {m} + 2*{n} != {4 * g - 3}")
        if m < g:
            raise InvalidInstance(f"m >= g violated: m={m}, g={g}")
        if not is_odd_prime(N):
            raise InvalidInstance(f"N must be an odd prime, got {N}")
        r = d - 2 * (g - 1)
        if r < 1 or r % 2 == 0:
            raise InvalidInstance(f"d - 2(g-1) must be odd and >= 1, got {r}")

    @classmethod
    def for_m(cls, g: int, m: int, N: int, d: int) -> "ProblemInstance":
        rest = 4 * g - 3 - m
        if rest < 0 or rest % 2:
            raise InvalidInstance(f"m + 2n = 4g - 3 has no solution for g={g}, m={m}")
        return cls(g, m, rest // 2, N, d)

    @property
    def gbar(self) -> int:
        return self.g - 1

    @property
    def M(self) -> int:
        return (self.N * (self.d - 2 * self.gbar) - 1) // 2

    def with_degree(self, d: int) -> "ProblemInstance":
        return ProblemInstance(self.g, self.m, self.n, self.N, d)


@dataclass(frozen=True, order=True)
class FixedLocus:
    d1: int
    d2: int
    j1: int
    j2: int

    def __post_init__(self):
        if self.j1 == self.j2:
            raise InvalidInstance("fixed loci need distinct weights")
        if self.d1 < 0 or self.d2 < 0:
            raise InvalidInstance("degrees must be non-negative")

    def swapped(self) -> "FixedLocus":
        return FixedLocus(self.d2, self.d1, self.j2, self.j1)


def enumerate_fixed_loci(d: int, N: int) -> list[FixedLocus]:
    """All ``(d+1) N (N-1)`` loci in canonical order."""
    return [
        FixedLocus(d1, d - d1, j1, j2)
        for d1 in range(d + 1)
        for j1 in range(N)
        for j2 in range(N)
        if j1 != j2
    ]


# ---------------------------------------------------------------------------
# route A


@lru_cache(maxsize=1024)
def _variable_terms(N: int, j: int, d: int, M: int, gbar: int, g: int) -> tuple[UniSeries, ...]:
    """``(lam+x)^M (x/((lam+x)^N-1))^(d-gbar) S^k/k!`` for ``k = 0..g``."""
    lam = CycloField.of(N).zeta(j)
    unit = shifted_power(lam, M, d) * power_minus_one(lam, N, d) ** (gbar - d)
    S = log_derivative_series(lam, N, d)
    return tuple(unit * t for t in theta_exp_terms(S, g))


def _difference_series(lam1: CycloElement, lam2: CycloElement, orders: tuple[int, int]) -> BiSeries:
    """``(lam1 + x1) - (lam2 + x2)``."""
    d1, d2 = orders
    zero = lam1.field.zero
    rows = [[zero] * (d2 + 1) for _ in range(d1 + 1)]
    rows[0][0] = lam1 - lam2
    if d1 >= 1:
        rows[1][0] = lam1.field.one
    if d2 >= 1:
        rows[0][1] = -lam1.field.one
    return BiSeries(rows)


def _alpha_part(locus: FixedLocus, inst: ProblemInstance) -> ThetaSeries:
    """``J^(2n-2gbar) (2 theta1 + 2 theta2 + (d2-d1) J)^m``, multinomially expanded."""
    F = CycloField.of(inst.N)
    g, m = inst.g, inst.m
    orders = (locus.d1, locus.d2)
    J = _difference_series(F.zeta(locus.j1), F.zeta(locus.j2), orders)
    power = J ** (2 * inst.n - 2 * inst.gbar)
    dd = locus.d2 - locus.d1
    entries: dict[tuple[int, int], BiSeries] = {}
    for s in range(m + 1):
        if s:
            power = power * J
        for l1 in range(min(g, m - s) + 1):
            l2 = m - s - l1
            if l2 > g:
                continue
            c = factorial(m) // (factorial(l1) * factorial(l2) * factorial(s))
            coef = c * 2 ** (l1 + l2) * dd**s
            if coef:
                entries[(l1, l2)] = power * coef
    if not entries:
        entries[(0, 0)] = power * 0
    return ThetaSeries(entries, g, orders)


def _locus_part(locus: FixedLocus, inst: ProblemInstance) -> ThetaSeries:
    """Product over i of ``(lam_i+x_i)^M (x_i/((lam_i+x_i)^N-1))^(d_i-gbar) exp(theta_i S_i)``."""
    g = inst.g
    orders = (locus.d1, locus.d2)
    t1 = _variable_terms(inst.N, locus.j1, locus.d1, inst.M, inst.gbar, g)
    t2 = _variable_terms(inst.N, locus.j2, locus.d2, inst.M, inst.gbar, g)
    entries = {
        (k1, k2): BiSeries.outer(u, v) for k1, u in enumerate(t1) for k2, v in enumerate(t2)
    }
    return ThetaSeries(entries, g, orders)


def build_summand_A(locus: FixedLocus, inst: ProblemInstance) -> ThetaSeries:
    """The full fixed-locus integrand as a ThetaSeries at truncation ``(d1, d2)``."""
    return _alpha_part(locus, inst) * _locus_part(locus, inst)


def contribution_A(locus: FixedLocus, inst: ProblemInstance) -> CycloElement:
    """``int_{Sym^d1 C x Sym^d2 C}`` of the locus integrand.

    Same value as ``integrate_fixed_locus(build_summand_A(...))`` but only the
    top coefficients of the product are formed.
    """
    value = integrate_product(_alpha_part(locus, inst), _locus_part(locus, inst))
    if isinstance(value, Fraction):
        return CycloField.of(inst.N).rational(value)
    return value


# ---------------------------------------------------------------------------
# route B


@dataclass(frozen=True)
class BNormalization:
    """Per-locus factor ``prod_i lam_i^(degree_power * d_i + genus_power * g)``.

    ``degree_power = genus_power = 0`` evaluates the combinatorial sum as
    displayed.  ``degree_power`` in {-1, 0, 1} probes a ``lam^(+-d)`` change of
    variables.  ``genus_power = -1`` restores the ``lam_i^((N-1)(g - l_i))``
    contribution of ``(lam_i + x_i)^((N-1)(g-l_i))`` under ``x_i = lam_i xbar_i``,
    which the displayed exponent ``M + l_i + alpha_i + 1`` omits.
    """

    degree_power: int = 0
    genus_power: int = 0

    @property
    def label(self) -> str:
        if self.degree_power == 0 and self.genus_power == 0:
            return "as-printed"
        parts = []
        if self.degree_power:
            parts.append(f"xbar-corrected(c={self.degree_power:+d})")
        if self.genus_power:
            parts.append(f"genus-corrected(e={self.genus_power:+d})")
        return "+".join(parts)


AS_PRINTED = BNormalization()
GENUS_CORRECTED = BNormalization(genus_power=-1)


class Route(enum.Enum):
    A = "a"
    B = "b"


@lru_cache(maxsize=4096)
def _residue_part(N: int, M: int, gbar: int, d_i: int, l_i: int, alpha: int) -> Fraction:
    # sum_p C((M + (N-1)(gbar-l) + p)/N, d-l) C(alpha, p) (-1)^(alpha-p)
    if d_i - l_i < 0:
        return Fraction(0)
    total = Fraction(0)
    base = M + (N - 1) * (gbar - l_i)
    for p in range(alpha + 1):
        term = binom_general(Fraction(base + p, N), d_i - l_i) * comb(alpha, p)
        total += -term if (alpha - p) % 2 else term
    return total


def summand_B(
    locus: FixedLocus, inst: ProblemInstance, normalization: BNormalization = AS_PRINTED
) -> CycloElement:
    """The combinatorial form of a locus contribution.

    Sums over ``l1 + l2 + s = m``, ``0 <= k <= d``, ``alpha1 + alpha2 = k`` and
    ``p_i <= alpha_i`` with weights built from generalized binomials and the
    factor ``C(2n-2gbar+s, k) (lam1 - lam2)^(2n-2gbar+s-k)``.
    """
    F = CycloField.of(inst.N)
    g, gbar, m, n, N, M, d = inst.g, inst.gbar, inst.m, inst.n, inst.N, inst.M, inst.d
    d1, d2 = locus.d1, locus.d2
    lam = (F.zeta(locus.j1), F.zeta(locus.j2))
    diff = lam[0] - lam[1]
    diff_inv = diff ** -1
    total = F.zero
    for s in range(m + 1):
        E = 2 * n - 2 * gbar + s
        for l1 in range(min(g, m - s) + 1):
            l2 = m - s - l1
            if l2 > g:
                continue
            outer = Fraction(factorial(m), factorial(s)) * (d2 - d1) ** s
            outer *= 2 ** (l1 + l2) * comb(g, l1) * comb(g, l2)
            outer *= Fraction(N) ** (2 * gbar - l1 - l2)
            if outer == 0:
                continue
            for k in range(d + 1):
                zb = binom_general(E, k)
                if zb == 0:
                    continue
                e = E - k
                z_power = diff ** e if e >= 0 else diff_inv ** (-e)
                for a1 in range(k + 1):
                    a2 = k - a1
                    r = _residue_part(N, M, gbar, d1, l1, a1) * _residue_part(N, M, gbar, d2, l2, a2)
                    if r == 0:
                        continue
                    c = outer * zb * comb(k, a1) * r
                    if a2 % 2:
                        c = -c
                    e1 = M + l1 + a1 + 1 + normalization.degree_power * d1 + normalization.genus_power * g
                    e2 = M + l2 + a2 + 1 + normalization.degree_power * d2 + normalization.genus_power * g
                    total = total + z_power * F.zeta(locus.j1 * e1 + locus.j2 * e2) * c
    return total


# ---------------------------------------------------------------------------
# totals


def _evaluate(args: tuple[FixedLocus, ProblemInstance, Route, BNormalization]) -> CycloElement:
    locus, inst, route, normalization = args
    if route is Route.A:
        return contribution_A(locus, inst)
    return summand_B(locus, inst, normalization)


def default_workers() -> int:
    env = os.environ.get("QUOTLOC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def locus_total(
    inst: ProblemInstance,
    route: Route = Route.A,
    normalization: BNormalization = AS_PRINTED,
    workers: int = 1,
    loci: Iterable[FixedLocus] | None = None,
) -> CycloElement:
    """Sum of locus contributions, still as an element of Q(zeta_N)."""
    loci = enumerate_fixed_loci(inst.d, inst.N) if loci is None else list(loci)
    jobs = [(locus, inst, route, normalization) for locus in loci]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        values = [_evaluate(j) for j in jobs]
    total = CycloField.of(inst.N).zero
    for v in values:
        total = total + v
    return total


def quot_localized(
    inst: ProblemInstance,
    route: Route = Route.A,
    normalization: BNormalization = AS_PRINTED,
    workers: int = 1,
) -> Fraction:
    """``(-1)^g`` times the sum over all fixed loci, checked to be rational.

    The loci are enumerated with ordered weight pairs, so each split subbundle
    ``L1 + L2`` appears twice (once per labelling); the total is halved.
    """
    total = locus_total(inst, route, normalization, workers)
    if not total.is_rational():
        raise ArithmeticError(
            f"localization total for {inst} has a nonzero cyclotomic part: {total!r}"
        )
    value = total.to_rational() / 2
    return -value if inst.g % 2 else value


def shift_invariance_check(inst: ProblemInstance, route: Route = Route.A, workers: int = 1) -> bool:
    """Whether the answer at degree ``d`` equals the answer at ``d + 2``."""
    return quot_localized(inst, route, workers=workers) == quot_localized(
        inst.with_degree(inst.d + 2), route, workers=workers
    )


def degree_audit(inst: ProblemInstance, locus: FixedLocus) -> dict[str, int]:
    """Total degree in ``(x, theta, h)`` of each factor of the locus integrand.

    The sum must equal ``d1 + d2`` for ``h = 1`` to be a harmless specialization.
    """
    N, M, gbar = inst.N, inst.M, inst.gbar
    factors = {
        "difference_power": 2 * inst.n - 2 * gbar,
        "alpha_power": inst.m,
        "a2_power": 2 * M,
        "normal_bundle_units": sum((1 - N) * (di - gbar) for di in (locus.d1, locus.d2)),
        "exponentials": 0,
    }
    factors["total"] = sum(factors.values())
    return factors
