"""Exact densities on finite semigroups.

Densities of subsets of finite semigroups are computed in exact rational
arithmetic. Small semigroups can be enumerated, and campaigns check density
identities across all of them.
"""

from .densities import (
    density_report,
    folner_density,
    invariant_core,
    satisfies_sfc,
    translation_density_fast,
    translation_density_oracle,
)
from .errors import SemidenseError, TheoremViolation
from .kernels import BACKEND
from .means import MeanVector, banach_density, is_left_amenable
from .search import census, enumerate_semigroups
from .semigroup import FiniteSemigroup, SubsetMask, parse_sgt, read_sgt

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FiniteSemigroup",
    "MeanVector",
    "SemidenseError",
    "SubsetMask",
    "TheoremViolation",
    "banach_density",
    "census",
    "density_report",
    "enumerate_semigroups",
    "folner_density",
    "invariant_core",
    "is_left_amenable",
    "parse_sgt",
    "read_sgt",
    "satisfies_sfc",
    "translation_density_fast",
    "translation_density_oracle",
]
