"""Exact enumeration and limit laws for rooted non-plane unlabelled binary trees.

The package computes exact tree counts and height distributions from integer
recurrences, certifies the analytic growth constants with rigorous error
bounds, evaluates the theta limit law of scaled height together with moment
and deviation asymptotics, and samples uniform random trees for Monte-Carlo
validation.  The cli module exposes all of it as a command-line tool.
"""

from .constants import (
    CertifiedReal,
    compute_lambda,
    compute_rho,
    eval_y_at,
    eval_y_prime_at,
    eval_y_refined,
    otter_amplitude,
)
from .enumeration import (
    CountTable,
    HeightCountTable,
    HeightDistribution,
    Tree,
    brute_force_enumerate,
    brute_force_height_counts,
    count_trees,
    exact_moment,
    exceedance_column,
    exceedance_counts,
    height_bounded_counts,
    height_distribution,
    leaf,
    node,
)
from .errors import (
    AccuracyLoss,
    DegenerateRange,
    DomainError,
    InsufficientTable,
    OddCoefficient,
    ThetaHeightsError,
    ToleranceUnreachable,
    TooLarge,
)
from .limit_laws import (
    ThetaParams,
    asymptotic_moment,
    moderate_tail,
    saddle_bound,
    theta_J,
    theta_local,
    theta_survival,
)
from .sampler import HeightStats, empirical_height_stats, sample_tree, split_weights
from .series_core import (
    TruncatedIntSeries,
    half_of,
    polya_substitute,
    series_add,
    series_from,
    series_mul,
    z_series,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyLoss",
    "CertifiedReal",
    "CountTable",
    "DegenerateRange",
    "DomainError",
    "HeightCountTable",
    "HeightDistribution",
    "HeightStats",
    "InsufficientTable",
    "OddCoefficient",
    "ThetaHeightsError",
    "ThetaParams",
    "ToleranceUnreachable",
    "TooLarge",
    "Tree",
    "TruncatedIntSeries",
    "asymptotic_moment",
    "brute_force_enumerate",
    "brute_force_height_counts",
    "compute_lambda",
    "compute_rho",
    "count_trees",
    "empirical_height_stats",
    "eval_y_at",
    "eval_y_prime_at",
    "eval_y_refined",
    "exact_moment",
    "exceedance_column",
    "exceedance_counts",
    "half_of",
    "height_bounded_counts",
    "height_distribution",
    "leaf",
    "moderate_tail",
    "node",
    "otter_amplitude",
    "polya_substitute",
    "saddle_bound",
    "sample_tree",
    "series_add",
    "series_from",
    "series_mul",
    "split_weights",
    "theta_J",
    "theta_local",
    "theta_survival",
    "z_series",
]
