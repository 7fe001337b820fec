"""Sample autocorrelation and partial autocorrelation with significance bounds.

The ACF uses the biased estimator (full-sample denominator); the PACF is
computed from it by the Durbin-Levinson recursion. Significance bounds are the
usual +/- z/sqrt(n) dashed lines, with the normal quantile coming from an
embedded rational approximation so no statistical library is needed here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeriesError, SeriesLengthError

__all__ = [
    "CorrelogramRow",
    "acf",
    "pacf",
    "significance_bounds",
    "normal_quantile",
]


@dataclass(frozen=True)
class CorrelogramRow:
    """One correlogram entry: the lag and its (partial) autocorrelation."""

    lag: int
    value: float


def _values(ts_or_seq):
    """Accept either a TimeSeries or a bare sequence of floats."""
    values = getattr(ts_or_seq, "values", ts_or_seq)
    return np.asarray(values, dtype=np.float64)


def acf_values(ts, max_lag):
    """Autocorrelations r_0..r_max_lag as a plain array (internal workhorse).

    r_k = sum_t (Y_t - mu)(Y_{t+k} - mu) / sum_t (Y_t - mu)^2, with the
    denominator over the full sample (the biased estimator).
    """
    y = _values(ts)
    n = y.size
    if not 1 <= max_lag < n:
        raise SeriesLengthError(
            f"max_lag must be in 1..{n - 1}, got {max_lag}"
        )
    d = y - y.mean()
    denom = float(np.dot(d, d))
    if denom == 0.0:
        raise DegenerateSeriesError("zero-variance series has no correlogram")
    r = np.empty(max_lag + 1)
    r[0] = 1.0
    for k in range(1, max_lag + 1):
        r[k] = float(np.dot(d[:-k], d[k:])) / denom
    return r


def acf(ts, max_lag):
    """Sample autocorrelation function including lag 0.

    Parameters
    ----------
    ts : TimeSeries or sequence of float
    max_lag : int, 1 <= max_lag < len(ts)

    Returns
    -------
    list of CorrelogramRow for lags 0..max_lag.
    """
    r = acf_values(ts, max_lag)
    return [CorrelogramRow(k, float(r[k])) for k in range(max_lag + 1)]


def pacf_from_acf(r):
    """Partial autocorrelations phi_kk for k=1..len(r)-1 by Durbin-Levinson."""
    max_lag = len(r) - 1
    pacf_vals = np.empty(max_lag)
    phi_prev = np.empty(max_lag)
    phi_curr = np.empty(max_lag)
    pacf_vals[0] = r[1]
    phi_prev[0] = r[1]
    for k in range(2, max_lag + 1):
        num = r[k] - np.dot(phi_prev[: k - 1], r[1:k][::-1])
        den = 1.0 - np.dot(phi_prev[: k - 1], r[1:k])
        a = num / den
        pacf_vals[k - 1] = a
        phi_curr[: k - 1] = phi_prev[: k - 1] - a * phi_prev[: k - 1][::-1]
        phi_curr[k - 1] = a
        phi_prev[:k] = phi_curr[:k]
    return pacf_vals


def pacf(ts, max_lag):
    """Sample partial autocorrelation function for lags 1..max_lag.

    Computed by the Durbin-Levinson recursion from the sample ACF; lag 1
    equals the lag-1 autocorrelation identically.
    """
    r = acf_values(ts, max_lag)
    vals = pacf_from_acf(r)
    return [CorrelogramRow(k + 1, float(vals[k])) for k in range(max_lag)]


def significance_bounds(n, level=0.95):
    """Half-width of the correlogram significance band: z_{(1+level)/2}/sqrt(n)."""
    if n < 2:
        raise SeriesLengthError("need n >= 2 for significance bounds")
    return normal_quantile((1.0 + level) / 2.0) / math.sqrt(n)


# ---------------------------------------------------------------------------
# Inverse standard-normal CDF (Wichura's algorithm AS 241, PPND16).
# Rational approximation, absolute error below 1e-15 — far inside the 1e-8
# the correlogram bounds require. Coefficients from Wichura (1988),
# Applied Statistics 37(3).
# ---------------------------------------------------------------------------

_A = (3.3871328727963666080e0, 1.3314166789178437745e2,
      1.9715909503065514427e3, 1.3731693765509461125e4,
      4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2,
      5.3941960214247511077e3, 2.1213794301586595867e4,
      3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0,
      5.76949722146069140550e0, 3.64784832476320460504e0,
      1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1,
      1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0,
      1.78482653991729133580e0, 2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4,
      1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(coeffs, x):
    out = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        out = out * x + c
    return out


def normal_quantile(p):
    """Inverse standard-normal CDF for p in (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = p if q < 0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        value = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        value = _poly(_E, r) / _poly(_F, r)
    return -value if q < 0 else value
