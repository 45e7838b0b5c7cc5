"""Continuous iterates x_t of a unit-step map near a fixed point.

The flow series is solved order by order from ``f(x_t(x)) = x_t(f(x))`` and
then sharpened by n-fold conjugation with the map and its inverse.
"""

from __future__ import annotations

from .exceptions import (
    DegenerateError,
    DomainError,
    FracIterError,
    NumericRangeError,
    PoleError,
    ResonanceError,
    UsageError,
)
from .series import (
    TPoly,
    TruncatedSeries,
    format_tpoly,
    series_add,
    series_compose,
    series_eval,
    series_mul,
    series_revert,
)
from .solver import (
    FlowSeries,
    MapSeries,
    UnitStepReport,
    solve_flow_exact,
    solve_flow_numeric,
    velocity_series,
    verify_unit_step,
)
from .maps import CATALOG, MapSpec, SchroederClosed, apply_n, catalog_get, user_map
from .conjugation import (
    ConjugatedApproximant,
    Direction,
    approximant,
    choose_direction,
    conjugate_eval,
    flow_for,
    iterate_eval,
)
from .accuracy import (
    ErrorRecord,
    RadiusReport,
    delta_N,
    epsilon_n,
    extrema_table,
    hyp2f1_unit,
    leading_error_logistic2,
    logistic2_coefficient,
    logistic2_delta,
    radius_estimate,
    relative_error,
    scaling_check,
    successive_difference,
)
from .schroeder import (
    KoenigsSeries,
    ParabolicPsiExpansion,
    flow_from_koenigs,
    koenigs_series,
    koenigs_velocity,
    parabolic_psi,
    psi_eval,
    psi_residual,
)

__version__ = "0.1.0"
