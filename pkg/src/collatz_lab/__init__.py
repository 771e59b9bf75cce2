"""Exact-arithmetic toolkit for the shortcut Collatz map.

Everything is computed with big integers, dyadic rationals and Fractions;
no floating point enters any reported value.
"""

from .core import (
    CycleInfo,
    NoCycleWithinBudget,
    Trajectory,
    detect_cycle,
    parity_indicator,
    step,
    trajectory,
)
from .coeffs import (
    CoeffPair,
    Dyadic,
    PowerRatio,
    coeffs_of_seed,
    coeffs_of_vector,
    evaluate,
)
from .parity import (
    CompleteMatrix,
    GrowthReport,
    ParityVector,
    ResidueClass,
    build_matrix,
    convertibility_probe,
    minimal_seed,
    parity_vector,
    solve_parity,
)
from .periodic import (
    AlphaRealizable,
    AlphaReport,
    BetaOnly,
    PeriodicUnit,
    UnitLimit,
    alpha_cycle_limit,
    is_alpha_vs_beta,
    unit_limit,
)
from .series import (
    Family,
    LimitSummary,
    SeriesMember,
    SeriesReport,
    build_series,
    series_limits,
)
from .classify import (
    ClassLabel,
    Grade,
    Verdict,
    WatchFlag,
    classify_seed,
    classify_unit,
    conjecture_watchlist,
    survey,
)
from .proportions import (
    Mode,
    ProportionReport,
    SweepReport,
    SweepTarget,
    convergence_sweep,
    growth_threshold,
    proportion_a,
    proportion_s,
    threshold_fraction,
)
from . import errors

__version__ = "0.1.0"
