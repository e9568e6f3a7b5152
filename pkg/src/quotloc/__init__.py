"""Exact intersection numbers on the moduli space of rank-2 odd-degree bundles.

Three independent routes are provided: the Bernoulli closed form
(:mod:`quotloc.closedform`), torus localization on a Quot scheme
(:mod:`quotloc.localization`), and its large-N asymptotic collapse.
"""

from .closedform import (
    DegreeError,
    IntersectionQuery,
    asymptotic_sum,
    intersect_main,
    intersect_psi,
    reduction_prefactor,
    rhs_red,
)
from .cyclotomic import CycloElement, CycloField, RootSumAlgorithm, cyclo_inv, root_sum
from .exact import BernoulliTable, Convention, bernoulli, binom_general
from .localization import (
    AS_PRINTED,
    GENUS_CORRECTED,
    BNormalization,
    FixedLocus,
    InvalidInstance,
    ProblemInstance,
    Route,
    enumerate_fixed_loci,
    quot_localized,
)
from .series import BiSeries, PoleError, TruncationError, UniSeries

__version__ = "0.1.0"

__all__ = [
    "AS_PRINTED",
    "GENUS_CORRECTED",
    "BNormalization",
    "BernoulliTable",
    "BiSeries",
    "Convention",
    "CycloElement",
    "CycloField",
    "DegreeError",
    "FixedLocus",
    "IntersectionQuery",
    "InvalidInstance",
    "PoleError",
    "ProblemInstance",
    "RootSumAlgorithm",
    "Route",
    "TruncationError",
    "UniSeries",
    "asymptotic_sum",
    "bernoulli",
    "binom_general",
    "cyclo_inv",
    "enumerate_fixed_loci",
    "intersect_main",
    "intersect_psi",
    "quot_localized",
    "reduction_prefactor",
    "rhs_red",
    "root_sum",
]
