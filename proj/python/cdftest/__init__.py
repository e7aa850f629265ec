"""Minimum-distance tests of parametric transformations on distribution functions."""

from ._core import (
    TestResult,
    ecdf,
    k_sample_test,
    normal_cdf,
    normal_quantile,
    paired_test,
    simulate_rates,
    two_sample_test,
)

__all__ = [
    "TestResult",
    "ecdf",
    "k_sample_test",
    "normal_cdf",
    "normal_quantile",
    "paired_test",
    "simulate_rates",
    "two_sample_test",
]
