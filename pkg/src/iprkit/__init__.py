"""Insurance-penetration-rate analysis toolkit.

Time-series utilities for computing insurance penetration rates from premium
and GDP records, testing stationarity, identifying and fitting (seasonal)
ARIMA models by exact maximum likelihood, checking residual diagnostics, and
producing interval forecasts.
"""

from .cli import CommandOutcome, main, run
from .correlation import acf, acf_values, normal_quantile, pacf, significance_bounds
from .diagnostics import (
    AccuracyReport,
    NormalityReport,
    PortmanteauReport,
    accuracy,
    ks_normality,
    ljung_box,
)
from .errors import (
    ComputationError,
    DataError,
    DegenerateSeriesError,
    DegreesOfFreedomError,
    DuplicatePeriodError,
    EmptyInputError,
    FitFailedError,
    IprkitError,
    MalformedRowError,
    NearUnitRootError,
    PeriodGapError,
    SelectionFailedError,
    SeriesLengthError,
    SingularDesignError,
    UndefinedMetricError,
)
from .estimation import (
    FittedModel,
    ModelOrder,
    fit,
    information_criteria,
    loglikelihood,
    simulate,
)
from .forecasting import ForecastResult, forecast, psi_weights
from .ingest import (
    PremiumRecord,
    compute_ipr,
    fixture_path,
    load_csv,
    load_fixture,
    to_timeseries,
)
from .selection import SearchConfig, SearchTrace, auto_select, choose_d
from .series import TimeSeries, difference, integrate, summary
from .stationarity import adf_test, default_adf_lag, kpss_test, pp_test

__version__ = "1.0.0"

__all__ = [
    "TimeSeries", "difference", "integrate", "summary",
    "acf", "acf_values", "pacf", "significance_bounds", "normal_quantile",
    "PremiumRecord", "compute_ipr", "load_csv", "load_fixture",
    "to_timeseries", "fixture_path",
    "adf_test", "pp_test", "kpss_test", "default_adf_lag",
    "ModelOrder", "FittedModel", "fit", "loglikelihood",
    "information_criteria", "simulate",
    "SearchConfig", "SearchTrace", "auto_select", "choose_d",
    "PortmanteauReport", "NormalityReport", "AccuracyReport",
    "ljung_box", "ks_normality", "accuracy",
    "ForecastResult", "forecast", "psi_weights",
    "CommandOutcome", "run", "main",
    "IprkitError", "DataError", "ComputationError",
    "EmptyInputError", "MalformedRowError", "DuplicatePeriodError",
    "PeriodGapError", "SeriesLengthError", "DegenerateSeriesError",
    "SingularDesignError", "FitFailedError", "NearUnitRootError",
    "DegreesOfFreedomError", "UndefinedMetricError", "SelectionFailedError",
]
