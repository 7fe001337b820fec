"""Residual diagnostics and forecast-accuracy metrics.

The Ljung-Box portmanteau test checks residual autocorrelation jointly over
a window of lags; the Kolmogorov-Smirnov check compares the residuals to a
normal distribution with their own mean and standard deviation; and
`accuracy` computes the seven standard point-forecast metrics (ME, RMSE,
MAE, MPE, MAPE, MASE, lag-1 error autocorrelation) with errors defined as
actual minus predicted, so positive ME means the forecasts run low.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from .correlation import _values, acf_values
from .errors import (
    DegenerateSeriesError,
    DegreesOfFreedomError,
    SeriesLengthError,
    UndefinedMetricError,
)

__all__ = [
    "PortmanteauReport",
    "NormalityReport",
    "AccuracyReport",
    "ljung_box",
    "ks_normality",
    "accuracy",
]


@dataclass(frozen=True)
class PortmanteauReport:
    """Ljung-Box test outcome.

    Attributes
    ----------
    q_stat : float
        Q = n(n+2) * sum_{k=1..m} r_k^2 / (n-k) over the residual ACF.
    lags_used : int
        m, the number of autocorrelations summed.
    fitdf : int
        Degrees of freedom absorbed by the fitted model's coefficients.
    df : int
        lags_used - fitdf, the chi-square degrees of freedom.
    p_value : float
        Upper-tail chi-square probability; large values mean the residuals
        look like white noise (the model is adequate).
    """

    q_stat: float
    lags_used: int
    fitdf: int
    df: int
    p_value: float

    def to_text(self):
        return (
            f"Ljung-Box Q = {self.q_stat:.5g} on {self.lags_used} lags "
            f"(model df {self.fitdf}, chi-square df {self.df}), "
            f"p-value = {self.p_value:.4g}"
        )


@dataclass(frozen=True)
class NormalityReport:
    """One-sample Kolmogorov-Smirnov check against a fitted normal.

    Attributes
    ----------
    d_stat : float
        Largest gap between the empirical CDF and the normal CDF.
    p_value : float
        Asymptotic (Kolmogorov distribution) upper-tail probability.
    params_estimated : bool
        True when the normal's mean and standard deviation came from the
        sample itself, which biases the p-value upward (the test is then
        conservative toward declaring normality).
    """

    d_stat: float
    p_value: float
    params_estimated: bool = True

    def to_text(self):
        note = " (parameters estimated; p biased upward)" \
            if self.params_estimated else ""
        return (
            f"Kolmogorov-Smirnov D = {self.d_stat:.5g}, "
            f"p-value = {self.p_value:.4g}{note}"
        )


@dataclass(frozen=True)
class AccuracyReport:
    """Point-forecast accuracy metrics.

    me, rmse, mae are in the series' units; mpe and mape are percentages;
    mase is scaled by the mean absolute naive error over the training set;
    acf1 is the lag-1 autocorrelation of the errors (NaN when the errors
    have zero variance).
    """

    me: float
    rmse: float
    mae: float
    mpe: float
    mape: float
    mase: float
    acf1: float

    _FIELDS = ("me", "rmse", "mae", "mpe", "mape", "mase", "acf1")

    def to_text(self):
        """Two aligned lines: headers and values."""
        header = "".join(f"{name.upper():>14}" for name in self._FIELDS)
        row = "".join(
            f"{getattr(self, name):>14.6g}" for name in self._FIELDS)
        return [header, row]


def ljung_box(residuals, lags=None, fitdf=0):
    """Ljung-Box portmanteau test for joint residual autocorrelation.

    Parameters
    ----------
    residuals : TimeSeries or sequence of float
    lags : int, optional
        Number of autocorrelations to pool; defaults to min(10, n // 5).
    fitdf : int
        Coefficients the residuals' model estimated; subtracted from the
        chi-square degrees of freedom.

    Returns
    -------
    PortmanteauReport

    Raises
    ------
    DegreesOfFreedomError when lags <= fitdf; SeriesLengthError when the
    series has fewer than lags + 1 points.
    """
    values = _values(residuals)
    n = values.size
    if lags is None:
        lags = min(10, n // 5)
    if lags < 1:
        raise DegreesOfFreedomError("ljung_box needs at least one lag")
    if fitdf < 0:
        raise ValueError("fitdf must be non-negative")
    if lags <= fitdf:
        raise DegreesOfFreedomError(
            f"ljung_box needs lags > fitdf, got lags={lags}, fitdf={fitdf}"
        )
    if n <= lags:
        raise SeriesLengthError(
            f"ljung_box with {lags} lags needs more than {lags} points, "
            f"got {n}"
        )
    r = acf_values(values, lags)[1:]
    k = np.arange(1, lags + 1)
    q_stat = float(n * (n + 2.0) * np.sum(r * r / (n - k)))
    df = lags - fitdf
    p_value = float(stats.chi2.sf(q_stat, df))
    return PortmanteauReport(q_stat=q_stat, lags_used=lags, fitdf=fitdf,
                             df=df, p_value=p_value)


def ks_normality(residuals):
    """Kolmogorov-Smirnov check of residuals against a fitted normal.

    The reference normal uses the residuals' own mean and standard
    deviation (ddof=1); the p-value is the asymptotic Kolmogorov
    distribution evaluated at sqrt(n)*D, flagged as biased upward because
    the parameters were estimated.

    Returns
    -------
    NormalityReport

    Raises
    ------
    SeriesLengthError for fewer than 5 points; DegenerateSeriesError for a
    zero-variance vector.
    """
    values = _values(residuals)
    n = values.size
    if n < 5:
        raise SeriesLengthError(
            f"ks_normality needs at least 5 points, got {n}")
    mean = float(values.mean())
    sd = float(values.std(ddof=1))
    if sd == 0.0:
        raise DegenerateSeriesError(
            "ks_normality is undefined for a constant residual vector")
    cdf = special.ndtr((np.sort(values) - mean) / sd)
    steps = np.arange(n + 1) / n
    d_stat = float(max(np.max(steps[1:] - cdf), np.max(cdf - steps[:-1])))
    p_value = float(special.kolmogorov(math.sqrt(n) * d_stat))
    return NormalityReport(d_stat=d_stat, p_value=min(max(p_value, 0.0), 1.0))


def accuracy(actual, predicted, training, naive_lag=1):
    """Seven accuracy metrics for a set of point predictions.

    Parameters
    ----------
    actual, predicted : TimeSeries or sequence of float
        Equal-length vectors; errors are actual - predicted.
    training : TimeSeries or sequence of float
        Series whose naive (lag `naive_lag`) one-step errors scale MASE.
    naive_lag : int
        Naive-forecast lag for the MASE denominator: 1 compares against
        "repeat the previous value", the seasonal period compares against
        "repeat last year's value".

    Returns
    -------
    AccuracyReport

    Raises
    ------
    UndefinedMetricError when some actual value is zero (MPE/MAPE divide
    by it, and the message names the index) or the naive scale is zero;
    SeriesLengthError when the training series has no naive errors.
    """
    y = _values(actual)
    f = _values(predicted)
    if y.size != f.size:
        raise ValueError(
            f"actual and predicted lengths differ: {y.size} vs {f.size}")
    if y.size == 0:
        raise SeriesLengthError("accuracy needs at least one observation")
    if naive_lag < 1:
        raise ValueError("naive_lag must be >= 1")
    zero = np.flatnonzero(y == 0.0)
    if zero.size:
        raise UndefinedMetricError(
            f"actual value at index {zero[0]} is zero; MPE/MAPE are "
            "undefined"
        )
    train = _values(training)
    if train.size <= naive_lag:
        raise SeriesLengthError(
            f"training series needs more than {naive_lag} points for the "
            "MASE scale"
        )

    e = y - f
    me = float(e.mean())
    rmse = float(math.sqrt(np.mean(e * e)))
    mae = float(np.abs(e).mean())
    mpe = float(100.0 * np.mean(e / y))
    mape = float(100.0 * np.mean(np.abs(e / y)))

    scale = float(np.abs(train[naive_lag:] - train[:-naive_lag]).mean())
    if scale == 0.0:
        raise UndefinedMetricError(
            "naive errors on the training series are all zero; MASE is "
            "undefined"
        )
    mase = mae / scale

    centered = e - e.mean()
    c0 = float(np.dot(centered, centered))
    if c0 == 0.0 or e.size < 2:
        acf1 = math.nan
    else:
        acf1 = float(np.dot(centered[1:], centered[:-1]) / c0)
    return AccuracyReport(me=me, rmse=rmse, mae=mae, mpe=mpe, mape=mape,
                          mase=mase, acf1=acf1)
