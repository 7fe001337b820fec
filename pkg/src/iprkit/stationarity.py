"""Unit-root and stationarity tests: ADF, Phillips-Perron, and KPSS.

All three are closed-form functions of ordinary least squares fits, so their
statistics are exactly reproducible. P-values come from embedded finite-sample
critical-value tables: two-stage linear interpolation (first in sample size,
then in the statistic), clamped to the tables' printable range with the clamp
recorded on the report.

Critical-value provenance:

* ADF and PP (trend case): Banerjee, Dolado, Galbraith & Hendry (1993),
  "Co-integration, Error Correction, and the Econometric Analysis of
  Non-stationary Data" — the t-statistic and normalized-bias tables for the
  constant+trend regression.
* KPSS: Kwiatkowski, Phillips, Schmidt & Shin (1992), Table 1 — level and
  trend upper-tail critical values.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SeriesLengthError, SingularDesignError

__all__ = ["TestReport", "adf_test", "pp_test", "kpss_test"]


@dataclass(frozen=True)
class TestReport:
    """Outcome of a stationarity test.

    Attributes
    ----------
    kind : {"ADF", "PP", "KPSS"}
    statistic : float
    lag : int
        ADF lag order, or the PP/KPSS long-run-variance truncation parameter.
    p_value : float
        Interpolated from the embedded table, clamped to its range.
    clamped : {"none", "at_lower", "at_upper"}
        Whether the p-value sits at a table boundary.
    null_hypothesis : {"unit_root", "stationary"}
        ADF/PP test a unit-root null; KPSS tests a stationarity null.
    """

    kind: str
    statistic: float
    lag: int
    p_value: float
    clamped: str
    null_hypothesis: str

    @property
    def p_display(self):
        """P-value as printed: an inequality when clamped."""
        if self.clamped == "at_lower":
            return f"≤ {self.p_value:.4g} (clamped)"
        if self.clamped == "at_upper":
            return f"≥ {self.p_value:.4g} (clamped)"
        return f"{self.p_value:.4g}"


def _values(ts_or_seq):
    values = getattr(ts_or_seq, "values", ts_or_seq)
    return np.asarray(values, dtype=np.float64)


def _ols(X, y):
    """Least squares with a rank check; returns (beta, residuals, XtX_inv)."""
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise SingularDesignError(
            f"regression design is rank deficient ({rank} < {X.shape[1]})"
        )
    resid = y - X @ beta
    xtx_inv = np.linalg.inv(X.T @ X)
    return beta, resid, xtx_inv


def _bartlett_long_run_variance(u, lags):
    """Newey-West estimate with Bartlett weights w_j = 1 - j/(lags+1)."""
    n = u.size
    s2 = float(np.dot(u, u)) / n
    for j in range(1, lags + 1):
        w = 1.0 - j / (lags + 1.0)
        s2 += 2.0 * w * float(np.dot(u[: n - j], u[j:])) / n
    return s2


def _interp_p(stat, stat_grid, p_grid):
    """Linear interpolation of p over the statistic, with boundary clamping.

    `stat_grid` must be increasing; returns (p, clamped) where clamped is
    "at_lower"/"at_upper" when the statistic falls outside the grid (lower =
    clamped at the smallest tabulated p).
    """
    if stat <= stat_grid[0]:
        return p_grid[0], "at_lower" if p_grid[0] < p_grid[-1] else "at_upper"
    if stat >= stat_grid[-1]:
        return p_grid[-1], "at_upper" if p_grid[0] < p_grid[-1] else "at_lower"
    p = float(np.interp(stat, stat_grid, p_grid))
    return p, "none"


# ---------------------------------------------------------------------------
# Embedded critical-value tables (trend-case Dickey-Fuller regressions).
# Rows: tabulated sample sizes; columns: the p-levels in _DF_P.
# ---------------------------------------------------------------------------

_DF_N = np.array([25.0, 50.0, 100.0, 250.0, 500.0, 1e5])
_DF_P = np.array([0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99])

# t-statistic table (ADF, constant + trend), sign-flipped to plain values.
_ADF_TABLE = -np.array([
    [4.38, 4.15, 4.04, 3.99, 3.98, 3.96],
    [3.95, 3.80, 3.73, 3.69, 3.68, 3.66],
    [3.60, 3.50, 3.45, 3.43, 3.42, 3.41],
    [3.24, 3.18, 3.15, 3.13, 3.13, 3.12],
    [1.14, 1.19, 1.22, 1.23, 1.24, 1.25],
    [0.80, 0.87, 0.90, 0.92, 0.93, 0.94],
    [0.50, 0.58, 0.62, 0.64, 0.65, 0.66],
    [0.15, 0.24, 0.28, 0.31, 0.32, 0.33],
]).T

# Normalized-bias Z(alpha) table (PP, constant + trend).
_PP_TABLE = -np.array([
    [22.5, 25.7, 27.4, 28.4, 28.9, 29.5],
    [19.9, 22.4, 23.6, 24.4, 24.8, 25.1],
    [17.9, 19.8, 20.7, 21.3, 21.5, 21.8],
    [15.6, 16.8, 17.5, 18.0, 18.1, 18.3],
    [3.66, 3.71, 3.74, 3.75, 3.76, 3.77],
    [2.51, 2.60, 2.62, 2.64, 2.65, 2.66],
    [1.53, 1.66, 1.73, 1.78, 1.78, 1.79],
    [0.43, 0.65, 0.75, 0.82, 0.84, 0.87],
]).T

# KPSS upper-tail critical values; p decreases as the statistic grows.
_KPSS_P = np.array([0.01, 0.025, 0.05, 0.10])
_KPSS_LEVEL = np.array([0.739, 0.574, 0.463, 0.347])
_KPSS_TREND = np.array([0.216, 0.176, 0.146, 0.119])


def _df_table_p(stat, table, n):
    """Two-stage interpolation of the Dickey-Fuller style tables."""
    stat_grid = np.array([
        float(np.interp(n, _DF_N, table[:, j])) for j in range(_DF_P.size)
    ])
    return _interp_p(stat, stat_grid, _DF_P)


def default_adf_lag(n):
    """Default ADF lag order trunc((n-1)^(1/3)) for a length-n series."""
    return int(np.floor((n - 1) ** (1.0 / 3.0)))


def _truncation_lag(n):
    """Bartlett truncation trunc(4 (n/100)^(1/4)) used by PP and KPSS."""
    return int(np.floor(4.0 * (n / 100.0) ** 0.25))


def adf_test(ts, lag_order=None):
    """Augmented Dickey-Fuller test with constant and linear trend.

    Regresses dY_t on Y_{t-1}, an intercept, a linear trend, and `lag_order`
    lagged differences; the statistic is the t-ratio on Y_{t-1}. The default
    lag order is trunc((n-1)^(1/3)).

    Null hypothesis: the series has a unit root.
    """
    x = _values(ts)
    n_obs = x.size
    if lag_order is None:
        lag_order = default_adf_lag(n_obs)
    if lag_order < 0:
        raise ValueError("lag_order must be >= 0")
    if n_obs <= lag_order + 2:
        raise SeriesLengthError(
            f"series of length {n_obs} too short for ADF with lag "
            f"{lag_order}"
        )
    k = lag_order + 1
    dy = np.diff(x)
    n = dy.size
    # Regression sample: t = k..n (1-based over the differenced series).
    yt = dy[k - 1:]
    m = yt.size
    cols = [x[k - 1: n_obs - 1],            # Y_{t-1}
            np.ones(m),
            np.arange(k, n + 1, dtype=np.float64)]  # trend
    for j in range(1, k):                    # lagged differences
        cols.append(dy[k - 1 - j: n - j])
    X = np.column_stack(cols)
    beta, resid, xtx_inv = _ols(X, yt)
    dof = m - X.shape[1]
    if dof <= 0:
        raise SeriesLengthError("no residual degrees of freedom in ADF fit")
    s2 = float(np.dot(resid, resid)) / dof
    se = np.sqrt(s2 * xtx_inv[0, 0])
    stat = float(beta[0] / se)
    p, clamped = _df_table_p(stat, _ADF_TABLE, n)
    return TestReport("ADF", stat, int(lag_order), p, clamped, "unit_root")


def pp_test(ts):
    """Phillips-Perron test, normalized-bias Z(alpha) form, trend case.

    Fits Y_t on an intercept, centered trend, and Y_{t-1}; corrects the
    normalized bias n(alpha-1) with a Bartlett long-run variance using
    truncation trunc(4 (n/100)^(1/4)).

    Null hypothesis: the series has a unit root.
    """
    x = _values(ts)
    if x.size < 10:
        raise SeriesLengthError("PP test needs at least 10 observations")
    yt = x[1:]
    yt1 = x[:-1]
    n = yt.size
    tt = np.arange(1, n + 1, dtype=np.float64)
    X = np.column_stack([np.ones(n), tt - n / 2.0, yt1])
    beta, u, _ = _ols(X, yt)
    alpha = float(beta[2])
    gamma0 = float(np.dot(u, u)) / n
    lags = _truncation_lag(n)
    lam = _bartlett_long_run_variance(u, lags)
    # det(X'X) for the (1, t, y_{t-1}) design in closed form.
    n2 = float(n) * n
    sy = float(yt1.sum())
    syt = float(np.dot(yt1, tt))
    syy = float(np.dot(yt1, yt1))
    dx = (n2 * (n2 - 1.0) * syy / 12.0
          - n * syt ** 2
          + n * (n + 1.0) * syt * sy
          - n * (n + 1.0) * (2.0 * n + 1.0) * sy ** 2 / 6.0)
    stat = n * (alpha - 1.0) - (float(n) ** 6) / (24.0 * dx) * (lam - gamma0)
    p, clamped = _df_table_p(stat, _PP_TABLE, n)
    return TestReport("PP", float(stat), lags, p, clamped, "unit_root")


def kpss_test(ts, null="level"):
    """KPSS test of the null that the series is (level- or trend-) stationary.

    Residuals come from a regression on a constant (null="level") or constant
    plus trend (null="trend"); the statistic is n^-2 sum(S_t^2) divided by the
    Bartlett long-run variance of the residuals.
    """
    x = _values(ts)
    n = x.size
    if n < 10:
        raise SeriesLengthError("KPSS test needs at least 10 observations")
    if null == "level":
        e = x - x.mean()
        table = _KPSS_LEVEL
    elif null == "trend":
        tt = np.arange(1, n + 1, dtype=np.float64)
        X = np.column_stack([np.ones(n), tt])
        _, e, _ = _ols(X, x)
        table = _KPSS_TREND
    else:
        raise ValueError("null must be 'level' or 'trend'")
    s = np.cumsum(e)
    eta = float(np.dot(s, s)) / (n * n)
    lags = _truncation_lag(n)
    s2 = _bartlett_long_run_variance(e, lags)
    stat = eta / s2
    # Table is decreasing in the statistic; flip for interpolation.
    p, clamped = _interp_p(stat, table[::-1], _KPSS_P[::-1])
    return TestReport("KPSS", float(stat), lags, p, clamped, "stationary")
