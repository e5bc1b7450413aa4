"""Chain metrization of quasi-metric spaces and the dyadic counterexample."""

__version__ = "0.1.0"

from .errors import QuasiMetricError
from .qcore import (
    QuasiMetricSpace,
    SpaceAnalysis,
    classify,
    mult_triangle_constant,
    quasi_constant,
    snowflake,
    validate_space,
)
from .metrize import (
    ChainMetricResult,
    FrinkReport,
    chain_cost,
    chain_metrize,
    chain_oracle,
    frink_check,
    sigma_bound,
)
from .dyadic import DyadicParams, DyadicPoint

__all__ = [
    "QuasiMetricError",
    "QuasiMetricSpace",
    "SpaceAnalysis",
    "classify",
    "mult_triangle_constant",
    "quasi_constant",
    "snowflake",
    "validate_space",
    "ChainMetricResult",
    "FrinkReport",
    "chain_cost",
    "chain_metrize",
    "chain_oracle",
    "frink_check",
    "sigma_bound",
    "DyadicParams",
    "DyadicPoint",
]
