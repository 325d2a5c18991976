"""Generalized binomial transforms, p-recursive recurrences and the dilogarithm."""

from .dilog import DilogResult, Identity, RateReport, dispatch, li2, min_rate, optimal_alpha, sum_w_series
from .errors import (
    AlgebraError,
    BinDilogError,
    BranchCutError,
    DomainError,
    InsufficientPrefixError,
    NotConvergedError,
    NotInvertibleError,
    SingularRecurrenceError,
    UndefinedConditionError,
)
from .numerics import EXTENDED, FLOAT64, Extended, Float64, KahanAccumulator, kahan_sum
from .recurrence import Poly, Recurrence, binomial_reduction, transform_recurrence
from .transform import TransformParams, binomial_transform, compose_params, euler_sum, invert_params

__version__ = "0.1.0"

__all__ = [
    "DilogResult", "Identity", "RateReport", "dispatch", "li2", "min_rate", "optimal_alpha", "sum_w_series",
    "AlgebraError", "BinDilogError", "BranchCutError", "DomainError", "InsufficientPrefixError",
    "NotConvergedError", "NotInvertibleError", "SingularRecurrenceError", "UndefinedConditionError",
    "EXTENDED", "FLOAT64", "Extended", "Float64", "KahanAccumulator", "kahan_sum",
    "Poly", "Recurrence", "binomial_reduction", "transform_recurrence",
    "TransformParams", "binomial_transform", "compose_params", "euler_sum", "invert_params",
]
