"""Maximum-likelihood estimation of (seasonal) ARIMA models with drift.

Models are fitted on the differenced scale by maximizing the exact Gaussian
likelihood of the implied stationary ARMA process, evaluated by a Kalman
filter with the exact stationary initial state covariance and sigma^2
concentrated out. Optimization runs over unconstrained variables mapped
through the partial-autocorrelation (Monahan) transform, so stationarity and
invertibility hold by construction. A conditional-sum-of-squares pass over
the raw coefficients supplies starting values; if that pass settles on a
non-stationary AR or seasonal-AR part, the fit fails rather than continue
from an invalid region. Standard errors come from the inverse observed
information (numeric Hessian of the concentrated negative log-likelihood in
natural coefficient space).

Sign conventions: w_t = phi_1 w_{t-1} + ... + eps_t + theta_1 eps_{t-1} + ...,
i.e. the AR operator is 1 - phi(B) and the MA operator is 1 + theta(B).
The drift coefficient is the mean of the differenced series, estimated
jointly with the ARMA coefficients.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from ._kalman import arma_filter, build_rrt, css_ssq, stationary_covariance
from .errors import (
    ComputationError,
    DegreesOfFreedomError,
    FitFailedError,
    NearUnitRootError,
    SeriesLengthError,
)
from .series import TimeSeries, difference

__all__ = [
    "ModelOrder",
    "FittedModel",
    "fit",
    "loglikelihood",
    "information_criteria",
    "simulate",
]

MAX_TOTAL_ORDER = 10
ROOT_RADIUS = 1.001
_LOG_2PI = math.log(2.0 * math.pi)
_BIG = 1e10


@dataclass(frozen=True)
class ModelOrder:
    """ARIMA(p,d,q)(P,D,Q)[s] order with a drift flag.

    s=1 means non-seasonal; seasonal orders require s >= 2. `drift` adds a
    mean term on the differenced scale (an intercept when d+D=0, a linear
    trend in the level when d+D=1).
    """

    p: int = 0
    d: int = 0
    q: int = 0
    P: int = 0
    D: int = 0
    Q: int = 0
    s: int = 1
    drift: bool = False

    def __post_init__(self):
        for name in ("p", "d", "q", "P", "D", "Q"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.s == 1 and (self.P or self.D or self.Q):
            raise ValueError("seasonal orders require s >= 2")
        if self.p + self.q + self.P + self.Q > MAX_TOTAL_ORDER:
            raise ValueError(
                f"total coefficient order exceeds cap {MAX_TOTAL_ORDER}"
            )

    @property
    def n_coefficients(self):
        """Number of estimated coefficients (excluding sigma^2)."""
        return self.p + self.q + self.P + self.Q + (1 if self.drift else 0)

    @property
    def diff_total(self):
        """Observations lost to differencing: d + s*D."""
        return self.d + self.s * self.D

    def describe(self):
        """Text form 'ARIMA(p,d,q)(P,D,Q)[s] with drift'."""
        text = f"ARIMA({self.p},{self.d},{self.q})"
        if self.P or self.D or self.Q:
            text += f"({self.P},{self.D},{self.Q})[{self.s}]"
        if self.drift:
            text += " with drift"
        return text


# ---------------------------------------------------------------------------
# Parameter layout and the stationarity/invertibility transform
# ---------------------------------------------------------------------------

def coefficient_names(order):
    """Names aligned with the packed coefficient vector."""
    names = [f"ar{i + 1}" for i in range(order.p)]
    names += [f"ma{i + 1}" for i in range(order.q)]
    names += [f"sar{i + 1}" for i in range(order.P)]
    names += [f"sma{i + 1}" for i in range(order.Q)]
    if order.drift:
        names.append("drift")
    return names


def _split_coefficients(order, coefficients):
    c = np.asarray(coefficients, dtype=np.float64)
    if c.size != order.n_coefficients:
        raise ValueError(
            f"{order.describe()} needs {order.n_coefficients} coefficients, "
            f"got {c.size}"
        )
    i = 0
    ar = c[i: i + order.p]; i += order.p
    ma = c[i: i + order.q]; i += order.q
    sar = c[i: i + order.P]; i += order.P
    sma = c[i: i + order.Q]; i += order.Q
    mu = float(c[i]) if order.drift else 0.0
    return ar, ma, sar, sma, mu


def _pacf_to_coef(raw):
    """Map unconstrained values through tanh to partial autocorrelations and
    on to the coefficients of a strictly stationary AR polynomial."""
    x = np.tanh(np.asarray(raw, dtype=np.float64))
    coef = x.copy()
    for j in range(1, coef.size):
        coef[:j] = coef[:j] - x[j] * coef[j - 1::-1]
    return coef


def _coef_to_pacf(coef):
    """Inverse of :func:`_pacf_to_coef` (for starting values)."""
    work = np.asarray(coef, dtype=np.float64).copy()
    for j in range(work.size - 1, 0, -1):
        a = work[j]
        if abs(a) >= 1.0:
            raise ValueError("coefficients outside the stationary region")
        work[:j] = (work[:j] + a * work[j - 1::-1]) / (1.0 - a * a)
    return np.arctanh(np.clip(work, -1.0 + 1e-12, 1.0 - 1e-12))


def _natural_from_unconstrained(order, u):
    u = np.asarray(u, dtype=np.float64)
    i = 0
    parts = []
    parts.append(_pacf_to_coef(u[i: i + order.p])); i += order.p
    parts.append(-_pacf_to_coef(-u[i: i + order.q])); i += order.q
    parts.append(_pacf_to_coef(u[i: i + order.P])); i += order.P
    parts.append(-_pacf_to_coef(-u[i: i + order.Q])); i += order.Q
    if order.drift:
        parts.append(u[i: i + 1])
    return np.concatenate(parts) if parts else np.empty(0)


def _unconstrained_from_natural(order, coefficients):
    """Best-effort inverse of :func:`_natural_from_unconstrained`; blocks
    outside the stationary/invertible region start from zero instead."""
    ar, ma, sar, sma, mu = _split_coefficients(order, coefficients)
    parts = []
    for block, flip in ((ar, False), (ma, True), (sar, False), (sma, True)):
        try:
            u = _coef_to_pacf(-block if flip else block)
            parts.append(-u if flip else u)
        except ValueError:
            parts.append(np.zeros(len(block)))
    if order.drift:
        parts.append(np.array([mu]))
    return np.concatenate(parts) if parts else np.empty(0)


def _expand_ar(ar, sar, s):
    """Coefficients of phi(B)*PHI(B^s) as one AR vector (operator 1 - .)."""
    poly = np.concatenate(([1.0], -np.asarray(ar, dtype=np.float64)))
    if len(sar):
        seasonal = np.zeros(s * len(sar) + 1)
        seasonal[0] = 1.0
        seasonal[s:: s] = -np.asarray(sar, dtype=np.float64)
        poly = np.convolve(poly, seasonal)
    return -poly[1:]


def _expand_ma(ma, sma, s):
    """Coefficients of theta(B)*THETA(B^s) as one MA vector (operator 1 + .)."""
    poly = np.concatenate(([1.0], np.asarray(ma, dtype=np.float64)))
    if len(sma):
        seasonal = np.zeros(s * len(sma) + 1)
        seasonal[0] = 1.0
        seasonal[s:: s] = np.asarray(sma, dtype=np.float64)
        poly = np.convolve(poly, seasonal)
    return poly[1:]


def _min_root_modulus(poly_tail, sign):
    """Smallest root modulus of 1 + sign*sum(c_i z^i); inf when degree 0."""
    coeffs = np.concatenate(([1.0], sign * np.asarray(poly_tail)))
    coeffs = np.trim_zeros(coeffs, "b")
    if coeffs.size <= 1:
        return math.inf
    roots = np.roots(coeffs[::-1])
    return float(np.abs(roots).min()) if roots.size else math.inf


def _check_roots(phi_full, theta_full, radius=ROOT_RADIUS):
    ar_min = _min_root_modulus(phi_full, -1.0)
    if ar_min < radius:
        raise NearUnitRootError(
            f"AR root modulus {ar_min:.6f} inside rejection radius {radius}"
        )
    ma_min = _min_root_modulus(theta_full, 1.0)
    if ma_min < radius:
        raise NearUnitRootError(
            f"MA root modulus {ma_min:.6f} inside rejection radius {radius}"
        )


# ---------------------------------------------------------------------------
# Likelihood evaluation
# ---------------------------------------------------------------------------

def _run_filter(w, ar, ma, sar, sma, s):
    """Filter pass; returns (ssq, sumlog, resid, fvar) or raises."""
    phi_full = _expand_ar(ar, sar, s)
    theta_full = _expand_ma(ma, sma, s)
    r = max(len(phi_full), len(theta_full) + 1)
    phi_pad = np.zeros(r)
    phi_pad[: len(phi_full)] = phi_full
    rrt = build_rrt(theta_full, r)
    try:
        p0 = stationary_covariance(phi_pad, rrt)
    except np.linalg.LinAlgError as exc:
        raise FitFailedError(f"stationary covariance solve failed: {exc}")
    if not np.all(np.isfinite(p0)):
        raise FitFailedError("stationary covariance is not finite")
    ok, ssq, sumlog, resid, fvar = arma_filter(
        np.ascontiguousarray(w, dtype=np.float64), phi_pad, rrt, p0)
    if not ok or not np.isfinite(ssq) or ssq <= 0.0:
        raise FitFailedError("likelihood evaluation produced a degenerate "
                             "prediction variance")
    return ssq, sumlog, resid, fvar


_DIFFUSE_PRIOR = 1e6


def _integration_polynomial(order):
    """delta with (1-B)^d (1-B^s)^D = 1 - sum_i delta_i B^i (may be empty)."""
    poly = np.array([1.0])
    for _ in range(order.d):
        poly = np.convolve(poly, [1.0, -1.0])
    if order.D:
        seasonal = np.zeros(order.s + 1)
        seasonal[0] = 1.0
        seasonal[order.s] = -1.0
        for _ in range(order.D):
            poly = np.convolve(poly, seasonal)
    return -poly[1:]


def _drift_trend(order, mu, n):
    """Deterministic sequence whose differenced series has mean mu."""
    g = np.full(n, mu, dtype=np.float64)
    for _ in range(order.d):
        g = np.cumsum(g)
    for _ in range(order.D):
        for i in range(order.s, n):
            g[i] += g[i - order.s]
    return g


def _diffuse_residuals(x, order, ar, ma, sar, sma, mu):
    """Standardized innovations from a filter over the original series.

    Differencing is folded into the state as d + s*D integration components
    carrying a large-variance prior, so the first d + s*D residuals are small
    but nonzero and the remainder agree with the stationary-filter residuals
    up to O(1/prior). This full-length vector is what residual diagnostics
    conventionally consume.
    """
    phi_full = _expand_ar(ar, sar, order.s)
    theta_full = _expand_ma(ma, sma, order.s)
    delta = _integration_polynomial(order)
    n = x.size
    w = x - _drift_trend(order, mu, n) if order.drift else x
    r = max(len(phi_full), len(theta_full) + 1)
    k = delta.size
    dim = r + k
    tmat = np.zeros((dim, dim))
    tmat[: len(phi_full), 0] = phi_full
    for i in range(r - 1):
        tmat[i, i + 1] = 1.0
    zvec = np.zeros(dim)
    zvec[0] = 1.0
    zvec[r:] = delta
    if k:
        tmat[r, :] = zvec
        for j in range(1, k):
            tmat[r + j, r + j - 1] = 1.0
    rvec = np.zeros(dim)
    rvec[0] = 1.0
    rvec[1: 1 + len(theta_full)] = theta_full
    rrt = np.outer(rvec, rvec)
    phi_pad = np.zeros(r)
    phi_pad[: len(phi_full)] = phi_full
    p = np.zeros((dim, dim))
    p[:r, :r] = stationary_covariance(phi_pad, build_rrt(theta_full, r))
    if k:
        p[r:, r:] = _DIFFUSE_PRIOR * np.eye(k)
    a = np.zeros(dim)
    resid = np.zeros(n)
    for t in range(n):
        f = float(zvec @ p @ zvec)
        if not np.isfinite(f) or f <= 0.0:
            raise FitFailedError("residual filter produced a degenerate "
                                 "prediction variance")
        v = w[t] - float(zvec @ a)
        resid[t] = v / math.sqrt(f)
        pz = p @ zvec
        a = a + pz * (v / f)
        p = p - np.outer(pz, pz) / f
        a = tmat @ a
        p = tmat @ p @ tmat.T + rrt
    return resid


def loglikelihood(ts_differenced, order, params):
    """Exact Gaussian log-likelihood of a stationary ARMA at given parameters.

    Parameters
    ----------
    ts_differenced : TimeSeries or sequence of float
        The already-differenced series the ARMA applies to.
    order : ModelOrder
        Only p, q, P, Q, s and drift are consulted (the data is taken as
        already differenced).
    params : sequence of float
        Packed as (ar..., ma..., sar..., sma..., [drift], sigma2) — the
        coefficient layout of :class:`FittedModel` with the innovation
        variance appended.

    Returns
    -------
    float log-likelihood; raises FitFailedError when evaluation degenerates.
    """
    z = np.asarray(getattr(ts_differenced, "values", ts_differenced),
                   dtype=np.float64)
    params = np.asarray(params, dtype=np.float64)
    if params.size != order.n_coefficients + 1:
        raise ValueError("params must be the coefficient vector plus sigma2")
    sigma2 = float(params[-1])
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    ar, ma, sar, sma, mu = _split_coefficients(order, params[:-1])
    ssq, sumlog, _, _ = _run_filter(z - mu, ar, ma, sar, sma, order.s)
    n = z.size
    return -0.5 * (n * _LOG_2PI + n * math.log(sigma2)
                   + sumlog + ssq / sigma2)


def information_criteria(loglik, k, n):
    """(AIC, AICc, BIC) from a log-likelihood with k parameters and n points.

    AIC = -2 loglik + 2k; AICc = AIC + 2k(k+1)/(n-k-1);
    BIC = AIC + k (ln n - 2). k counts sigma^2.
    """
    if n <= k + 1:
        raise DegreesOfFreedomError(
            f"AICc undefined for n={n}, k={k} (need n > k+1)"
        )
    aic = -2.0 * loglik + 2.0 * k
    aicc = aic + 2.0 * k * (k + 1.0) / (n - k - 1.0)
    bic = aic + k * (math.log(n) - 2.0)
    return aic, aicc, bic


# ---------------------------------------------------------------------------
# The fitted-model value type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FittedModel:
    """An estimated ARIMA model.

    `residuals` are the standardized one-step prediction errors
    v_t / sqrt(F_t) on the differenced scale (length n_effective), so
    sum(residuals^2) reproduces the weighted sum of squares from the filter.
    `full_residuals` is the same quantity from a filter run over the
    original, undifferenced series with the integration handled by augmented
    states under a large-variance prior — a vector aligned with the original
    series whose first d + s*D entries are near (but not exactly) zero. All
    residual diagnostics conventionally use this full vector.

    `sigma2` is the degrees-of-freedom-adjusted innovation variance
    sum(residuals^2) / (n_effective - n_coefficients); the log-likelihood
    concentrates the maximum-likelihood variance sum(residuals^2)/n_effective
    internally. Forecast intervals scale with `sigma2`.
    """

    order: ModelOrder
    ar: tuple
    ma: tuple
    sar: tuple
    sma: tuple
    drift_coef: float | None
    std_errors: tuple
    sigma2: float
    loglik: float
    aic: float
    aicc: float
    bic: float
    residuals: TimeSeries
    full_residuals: TimeSeries
    n_effective: int
    series: TimeSeries

    @property
    def coefficients(self):
        """Packed coefficient vector (ar, ma, sar, sma, drift)."""
        coef = list(self.ar) + list(self.ma) + list(self.sar) + list(self.sma)
        if self.order.drift:
            coef.append(self.drift_coef)
        return np.asarray(coef, dtype=np.float64)

    @property
    def coefficient_names(self):
        return coefficient_names(self.order)

    def summary_lines(self):
        """Aligned text block describing the fit."""
        lines = [self.order.describe()]
        names = self.coefficient_names
        if names:
            coef = self.coefficients
            lines.append("  " + "".join(f"{n:>13}" for n in names))
            lines.append("  " + "".join(f"{v:>13.7g}" for v in coef))
            lines.append("  " + "".join(
                f"{v:>13.7g}" if np.isfinite(v) else f"{'--':>13}"
                for v in self.std_errors))
        lines.append(
            f"sigma^2 = {self.sigma2:.7g}   log likelihood = "
            f"{self.loglik:.7g}")
        lines.append(
            f"AIC = {self.aic:.7g}   AICc = {self.aicc:.7g}   "
            f"BIC = {self.bic:.7g}")
        return lines


# ---------------------------------------------------------------------------
# Fitting
# ---------------------------------------------------------------------------

def _difference_for(ts, order):
    z = ts
    if order.d:
        z = difference(z, lag=1, times=order.d)
    if order.D:
        z = difference(z, lag=order.s, times=order.D)
    return z


def _objective_factory(z, order):
    """Concentrated negative log-likelihood (per-observation form) over the
    natural coefficient vector, plus its unconstrained-space wrapper."""
    m = z.size

    def nll_natural(c):
        try:
            ar, ma, sar, sma, mu = _split_coefficients(order, c)
            ssq, sumlog, _, _ = _run_filter(z - mu, ar, ma, sar, sma, order.s)
        except (ComputationError, FloatingPointError):
            return _BIG
        value = 0.5 * (math.log(ssq / m) + sumlog / m)
        return value if np.isfinite(value) else _BIG

    def nll_unconstrained(u):
        return nll_natural(_natural_from_unconstrained(order, u))

    return nll_natural, nll_unconstrained


def _css_objective_factory(z, order):
    """Conditional-sum-of-squares objective over the *raw* (untransformed)
    coefficient vector; the starting-value pass runs unconstrained."""
    def css_natural(c):
        ar, ma, sar, sma, mu = _split_coefficients(order, c)
        phi_full = _expand_ar(ar, sar, order.s)
        theta_full = _expand_ma(ma, sma, order.s)
        ssq, count = css_ssq(np.ascontiguousarray(z - mu), phi_full,
                             theta_full)
        if count <= 0 or not np.isfinite(ssq) or ssq <= 0.0:
            return _BIG
        return 0.5 * math.log(ssq / count)

    return css_natural


def _minimize(fun, x0, maxiter=500):
    res = optimize.minimize(fun, x0, method="BFGS",
                            options={"gtol": 1e-8, "maxiter": maxiter})
    if not res.success:
        polish = optimize.minimize(
            fun, res.x, method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
        if polish.fun <= res.fun:
            res = polish
    return res


def _numeric_hessian(fun, x):
    """Central-difference Hessian; step scales with the parameter size."""
    n = x.size
    h = np.array([1e-4 * max(1.0, abs(v)) for v in x])
    hess = np.empty((n, n))
    for i in range(n):
        ei = np.zeros(n); ei[i] = h[i]
        f_pp = fun(x + 2 * ei)
        f_mm = fun(x - 2 * ei)
        f_0 = fun(x)
        hess[i, i] = (f_pp - 2 * f_0 + f_mm) / (4.0 * h[i] * h[i])
        for j in range(i + 1, n):
            ej = np.zeros(n); ej[j] = h[j]
            f1 = fun(x + ei + ej)
            f2 = fun(x + ei - ej)
            f3 = fun(x - ei + ej)
            f4 = fun(x - ei - ej)
            hess[i, j] = hess[j, i] = (f1 - f2 - f3 + f4) / (4 * h[i] * h[j])
    return hess


def _standard_errors(nll_natural, coef, m):
    """sqrt(diag(inv(m * Hessian of per-observation nll))) with NaN fallback."""
    scaled = lambda c: m * nll_natural(c)
    try:
        hess = _numeric_hessian(scaled, coef)
        cov = np.linalg.inv(hess)
        diag = np.diag(cov)
    except np.linalg.LinAlgError:
        return np.full(coef.size, np.nan)
    with np.errstate(invalid="ignore"):
        return np.sqrt(np.where(diag > 0, diag, np.nan))


def fit(ts, order, compute_se=True):
    """Fit a (seasonal) ARIMA model by exact maximum likelihood.

    Parameters
    ----------
    ts : TimeSeries
    order : ModelOrder
    compute_se : bool
        Skip the (numeric-Hessian) standard errors when False; order
        selection uses this internally and refits the winner with errors.

    Returns
    -------
    FittedModel

    Raises
    ------
    SeriesLengthError, FitFailedError, NearUnitRootError,
    DegreesOfFreedomError
    """
    z_ts = _difference_for(ts, order)
    z = z_ts.to_array()
    m = z.size
    npar = order.n_coefficients
    if m < npar + 2:
        raise SeriesLengthError(
            f"{order.describe()}: length after differencing is {m}, "
            f"need at least {npar + 2}"
        )

    if npar == 0:
        # Degenerate white-noise model: closed form, no optimization.
        sigma2 = float(np.mean(z * z))
        if sigma2 <= 0:
            raise FitFailedError("degenerate model on an all-zero series")
        loglik = -0.5 * m * (_LOG_2PI + 1.0 + math.log(sigma2))
        coef = np.empty(0)
        resid = z.copy()
    else:
        nll_natural, nll_u = _objective_factory(z, order)
        fallback = np.zeros(npar)
        if order.drift:
            fallback[-1] = float(z.mean())
        starts = [fallback]
        css_obj = _css_objective_factory(z, order)
        try:
            css_res = _minimize(css_obj, fallback, maxiter=200)
        except (ValueError, FloatingPointError):
            css_res = None
        if (css_res is not None and np.isfinite(css_res.fun)
                and css_res.fun < _BIG):
            # The unconstrained sum-of-squares pass must land on a stationary
            # AR region or the likelihood stage has no valid starting point.
            ar0, _, sar0, _, _ = _split_coefficients(order, css_res.x)
            if _min_root_modulus(ar0, -1.0) <= 1.0:
                raise FitFailedError(
                    f"{order.describe()}: non-stationary AR part in the "
                    "conditional-sum-of-squares start"
                )
            if _min_root_modulus(sar0, -1.0) <= 1.0:
                raise FitFailedError(
                    f"{order.describe()}: non-stationary seasonal AR part in "
                    "the conditional-sum-of-squares start"
                )
            starts.insert(0, _unconstrained_from_natural(order, css_res.x))

        best = None
        for u0 in starts:
            try:
                res = _minimize(nll_u, u0)
            except (ValueError, FloatingPointError):
                continue
            if best is None or res.fun < best.fun:
                best = res
        if best is None or not np.isfinite(best.fun) or best.fun >= _BIG:
            raise FitFailedError(
                f"{order.describe()}: optimizer failed to converge"
            )
        coef = _natural_from_unconstrained(order, best.x)
        ar, ma, sar, sma, mu = _split_coefficients(order, coef)
        _check_roots(_expand_ar(ar, sar, order.s),
                     _expand_ma(ma, sma, order.s))
        ssq, sumlog, resid, _ = _run_filter(z - mu, ar, ma, sar, sma, order.s)
        sigma2_ml = ssq / m
        loglik = -0.5 * (m * (_LOG_2PI + 1.0) + m * math.log(sigma2_ml)
                         + sumlog)
        sigma2 = ssq / (m - npar)

    k = npar + 1
    aic, aicc, bic = information_criteria(loglik, k, m)

    if npar == 0:
        std_errors = ()
    elif compute_se:
        std_errors = tuple(_standard_errors(nll_natural, coef, m))
    else:
        std_errors = (math.nan,) * npar

    ar, ma, sar, sma, mu = _split_coefficients(order, coef)
    residual_ts = TimeSeries(tuple(resid), z_ts.start, z_ts.frequency)
    if order.diff_total:
        full = _diffuse_residuals(ts.to_array(), order, ar, ma, sar, sma, mu)
        full_ts = TimeSeries(tuple(full), ts.start, ts.frequency)
    else:
        full_ts = residual_ts
    return FittedModel(
        order=order,
        ar=tuple(ar), ma=tuple(ma), sar=tuple(sar), sma=tuple(sma),
        drift_coef=mu if order.drift else None,
        std_errors=std_errors,
        sigma2=float(sigma2),
        loglik=float(loglik),
        aic=float(aic), aicc=float(aicc), bic=float(bic),
        residuals=residual_ts,
        full_residuals=full_ts,
        n_effective=m,
        series=ts,
    )


# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------

def simulate(order, coefficients, sigma2, n, seed):
    """Simulate a series from a (seasonal) ARIMA process.

    Parameters
    ----------
    order : ModelOrder
    coefficients : sequence of float
        Same packed layout as FittedModel.coefficients.
    sigma2 : float
        Innovation variance.
    n : int
        Output length (on the integrated scale when d or D are positive).
    seed : int
        Deterministic: the same seed always yields the same series.

    Notes
    -----
    A burn-in of 10*(p + q + P*s + Q*s + 1) draws is discarded before the
    kept sample; integration uses zero seed values.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    ar, ma, sar, sma, mu = _split_coefficients(order, coefficients)
    phi_full = _expand_ar(ar, sar, order.s)
    theta_full = _expand_ma(ma, sma, order.s)
    if _min_root_modulus(phi_full, -1.0) <= 1.0:
        raise ValueError("AR coefficients are not stationary")
    if _min_root_modulus(theta_full, 1.0) <= 1.0:
        raise ValueError("MA coefficients are not invertible")

    burn = 10 * (order.p + order.q
                 + order.P * order.s + order.Q * order.s + 1)
    rng = np.random.default_rng(seed)
    total = burn + n
    eps = rng.standard_normal(total) * math.sqrt(sigma2)
    p_len = len(phi_full)
    q_len = len(theta_full)
    w = np.zeros(total)
    for t in range(total):
        value = eps[t]
        for i in range(p_len):
            if t - 1 - i >= 0:
                value += phi_full[i] * w[t - 1 - i]
        for j in range(q_len):
            if t - 1 - j >= 0:
                value += theta_full[j] * eps[t - 1 - j]
        w[t] = value
    out = w[burn:] + mu
    for _ in range(order.d):
        out = np.cumsum(out)
    for _ in range(order.D):
        for i in range(order.s, out.size):
            out[i] += out[i - order.s]
    frequency = order.s if order.s > 1 else 1
    return TimeSeries(tuple(out), (1, 1), frequency)
