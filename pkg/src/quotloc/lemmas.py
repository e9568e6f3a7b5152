"""Exact checks of the analytic ingredients: the residue formula and the two
large-N limits (root-of-unity sums and shifted binomial differences).

Convergence verdicts compare exact errors at a few values of N; there is no
tolerance to tune.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Any, Iterable, Sequence

from .cyclotomic import RootSumAlgorithm, lemma_bern_limit, root_sum
from .exact import binom_general, binom_poly_coeffs
from .series import residue_oracle

__all__ = [
    "LemmaReport",
    "residue_closed",
    "lemma_bern_check",
    "lemma_binoms_limit",
    "lemma_binoms_check",
    "convergence_verdict",
    "residue_grid",
    "lemma_bern_grid",
    "lemma_binoms_grid",
]


@dataclass
class LemmaReport:
    lemma: str
    grid: dict[str, Any]
    points: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p["verdict"] in ("exact", "converging", "equal") for p in self.points)

    def failures(self) -> list[dict[str, Any]]:
        return [p for p in self.points if p["verdict"] not in ("exact", "converging", "equal")]


def residue_closed(a: int, b: int, c: int, N: int) -> Fraction:
    """``(1/N) sum_{p=0}^{a} (-1)^(a-p) C((b+p)/N, c) C(a, p)``."""
    total = Fraction(0)
    for p in range(a + 1):
        term = binom_general(Fraction(b + p, N), c) * comb(a, p)
        total += -term if (a - p) % 2 else term
    return total / N


def lemma_bern_check(
    a: int, k: int, N: int, algorithm: RootSumAlgorithm = RootSumAlgorithm.GENERATING
) -> tuple[Fraction, Fraction, Fraction]:
    """``N^-k sum_{zeta != 1} zeta^((N-1)/2 + a) / (1 - zeta)^k`` against its limit."""
    if N % 2 == 0:
        raise ValueError("N must be odd")
    finite = root_sum((N - 1) // 2 + a, k, N, algorithm) / Fraction(N) ** k
    limit = lemma_bern_limit(k)
    return finite, limit, abs(finite - limit)


def lemma_binoms_limit(z: Fraction, b: int, alpha: int) -> Fraction:
    """``alpha! [x^alpha] C(x + z, b)``, via ``C(x+z, b) = sum_j C(z, b-j) C(x, j)``."""
    total = Fraction(0)
    for j in range(alpha, b + 1):
        total += binom_general(z, b - j) * binom_poly_coeffs(j)[alpha]
    return factorial(alpha) * total


def lemma_binoms_check(z: Fraction, b: int, alpha: int, N: int) -> tuple[Fraction, Fraction]:
    """``N^alpha sum_p C(z + p/N, b) C(alpha, p) (-1)^(alpha-p)`` and its limit."""
    z = Fraction(z)
    total = Fraction(0)
    for p in range(alpha + 1):
        term = binom_general(z + Fraction(p, N), b) * comb(alpha, p)
        total += -term if (alpha - p) % 2 else term
    return Fraction(N) ** alpha * total, lemma_binoms_limit(z, b, alpha)


def convergence_verdict(errors: Sequence[Fraction]) -> str:
    """``exact`` if every error is zero, ``converging`` if strictly decreasing, else ``fail``."""
    if all(e == 0 for e in errors):
        return "exact"
    if all(x > y for x, y in zip(errors, errors[1:])):
        return "converging"
    return "fail"


def residue_grid(
    a_max: int = 6, b_abs: int = 4, c_max: int = 5, Ns: Iterable[int] = range(1, 10)
) -> LemmaReport:
    Ns = list(Ns)
    report = LemmaReport("residue", {"a_max": a_max, "b_abs": b_abs, "c_max": c_max, "N": Ns})
    for a, b, c, N in product(range(a_max + 1), range(-b_abs, b_abs + 1), range(c_max + 1), Ns):
        closed, oracle = residue_closed(a, b, c, N), residue_oracle(a, b, c, N)
        report.points.append(
            {
                "params": {"a": a, "b": b, "c": c, "N": N},
                "closed": closed,
                "oracle": oracle,
                "error": abs(closed - oracle),
                "verdict": "equal" if closed == oracle else "fail",
            }
        )
    return report


def lemma_bern_grid(
    ks: Iterable[int] = range(1, 7), As: Iterable[int] = (-1, 0, 1, 2), Ns: Sequence[int] = (11, 101, 1009)
) -> LemmaReport:
    """Errors along increasing N; at the largest N they must also be small."""
    Ns = list(Ns)
    report = LemmaReport("root-of-unity limit", {"k": list(ks), "a": list(As), "N": Ns})
    for k, a in product(report.grid["k"], report.grid["a"]):
        rows = [lemma_bern_check(a, k, N) for N in Ns]
        errors = [r[2] for r in rows]
        limit = rows[0][1]
        verdict = convergence_verdict(errors)
        if verdict != "fail" and errors[-1] >= abs(limit) / 100 + Fraction(1, 100):
            verdict = "fail"
        report.points.append(
            {
                "params": {"k": k, "a": a},
                "N": Ns,
                "finite": [r[0] for r in rows],
                "limit": limit,
                "errors": errors,
                "verdict": verdict,
            }
        )
    return report


def lemma_binoms_grid(
    b_max: int = 5,
    alpha_max: int = 4,
    zs: Iterable[Fraction] = (Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(2)),
    Ns: Sequence[int] = (10, 100, 1000),
) -> LemmaReport:
    """For ``b <= alpha`` the finite value is exact at every N; otherwise it converges."""
    Ns = list(Ns)
    zs = [Fraction(z) for z in zs]
    report = LemmaReport("binomial-difference limit", {"b_max": b_max, "alpha_max": alpha_max, "z": zs, "N": Ns})
    for z, b, alpha in product(zs, range(b_max + 1), range(alpha_max + 1)):
        rows = [lemma_binoms_check(z, b, alpha, N) for N in Ns]
        errors = [abs(f - lim) for f, lim in rows]
        verdict = convergence_verdict(errors)
        if b <= alpha and verdict != "exact":
            verdict = "fail"
        report.points.append(
            {
                "params": {"z": z, "b": b, "alpha": alpha},
                "N": Ns,
                "finite": [r[0] for r in rows],
                "limit": rows[0][1],
                "errors": errors,
                "verdict": verdict,
            }
        )
    return report
