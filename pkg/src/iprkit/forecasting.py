"""Multi-step point forecasts and normal-theory bands on the original scale.

Point forecasts run the ARMA recursion on the differenced scale (feeding
forecasts back in as they appear) and then undo the differencing against the
observed tail of the series. Interval widths accumulate the infinite-MA
(psi-weight) expansion of the full operator — AR, seasonal AR, and the
differencing factors together — so the step-j variance is
sigma2 * (psi_0^2 + ... + psi_{j-1}^2).
"""

import math
from dataclasses import dataclass

import numpy as np

from .correlation import normal_quantile
from .estimation import (
    _difference_for,
    _expand_ar,
    _expand_ma,
    _integration_polynomial,
    _run_filter,
)

__all__ = ["ForecastResult", "psi_weights", "forecast"]


@dataclass(frozen=True)
class ForecastResult:
    """Forecast path with confidence bands.

    Attributes
    ----------
    origin : (int, int)
        (year, period) of the last observed point.
    horizon : int
    points : tuple of float
        Forecasts for steps 1..horizon on the original scale.
    bands : dict
        level -> (lower: tuple, upper: tuple), one pair per requested level.
    labels : tuple of str
        Calendar labels for each forecast step (presentation only).
    """

    origin: tuple
    horizon: int
    points: tuple
    bands: dict
    labels: tuple

    def band(self, level):
        """(lower, upper) tuple pair for one confidence level."""
        return self.bands[level]

    def to_text(self, level=None):
        """Four-column lines: period, point forecast, band bounds."""
        if level is None:
            level = min(self.bands)
        lower, upper = self.bands[level]
        pct = f"{100.0 * level:g}"
        width = max(len(lab) for lab in self.labels)
        width = max(width, len("Point"))
        lines = [
            f"{'Point':<{width}} {'Forecast':>12} {'Lo ' + pct:>12} "
            f"{'Hi ' + pct:>12}"
        ]
        for lab, pt, lo, hi in zip(self.labels, self.points, lower, upper):
            lines.append(
                f"{lab:<{width}} {pt:>12.7g} {lo:>12.7g} {hi:>12.7g}")
        return lines


def psi_weights(model, count):
    """First `count` infinite-MA coefficients of the fitted operator.

    The expansion covers the complete left side — AR, seasonal AR, and the
    differencing polynomial — so for integrated models the weights do not
    decay and interval widths keep growing. psi_0 = 1 always.

    Returns
    -------
    numpy.ndarray of length `count`
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    order = model.order
    phi_full = _expand_ar(model.ar, model.sar, order.s)
    theta_full = _expand_ma(model.ma, model.sma, order.s)
    delta = _integration_polynomial(order)
    # (1 - phi(B))(1 - delta(B)) = 1 - a(B)
    combined = np.convolve(np.concatenate(([1.0], -np.asarray(phi_full))),
                           np.concatenate(([1.0], -np.asarray(delta))))
    a = -combined[1:]
    psi = np.zeros(count)
    psi[0] = 1.0
    for j in range(1, count):
        value = theta_full[j - 1] if j - 1 < len(theta_full) else 0.0
        upto = min(j, len(a))
        for i in range(1, upto + 1):
            value += a[i - 1] * psi[j - i]
        psi[j] = value
    return psi


def forecast(model, h, levels=(0.95,)):
    """Forecast h steps ahead with confidence bands.

    Parameters
    ----------
    model : FittedModel
    h : int
        Horizon, at least 1.
    levels : iterable of float
        Confidence levels, each strictly between 0 and 1.

    Returns
    -------
    ForecastResult

    Notes
    -----
    The step-1 band half-width is exactly z * sqrt(model.sigma2); later
    widths grow with the accumulated psi-weights.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    levels = tuple(sorted(set(float(v) for v in levels)))
    if not levels:
        raise ValueError("at least one confidence level is required")
    for level in levels:
        if not 0.0 < level < 1.0:
            raise ValueError(f"confidence level {level} outside (0, 1)")

    order = model.order
    series = model.series
    x = series.to_array()
    z = _difference_for(series, order).to_array()
    mu = model.drift_coef if model.drift_coef is not None else 0.0
    phi_full = _expand_ar(model.ar, model.sar, order.s)
    theta_full = _expand_ma(model.ma, model.sma, order.s)

    w = z - mu
    n_w = w.size
    if len(theta_full):
        _, _, resid, fvar = _run_filter(w, model.ar, model.ma, model.sar,
                                        model.sma, order.s)
        eps = resid * np.sqrt(fvar)
    else:
        eps = np.zeros(n_w)

    w_ext = np.concatenate((w, np.zeros(h)))
    for j in range(1, h + 1):
        t = n_w + j - 1
        value = 0.0
        for i, coef in enumerate(phi_full, start=1):
            value += coef * w_ext[t - i]
        for k, coef in enumerate(theta_full, start=1):
            if k >= j:  # only innovations from the observed span
                value += coef * eps[t - k]
        w_ext[t] = value
    z_hat = w_ext[n_w:] + mu

    delta = _integration_polynomial(order)
    if len(delta):
        x_ext = np.concatenate((x, np.zeros(h)))
        for j in range(1, h + 1):
            t = x.size + j - 1
            value = z_hat[j - 1]
            for i, coef in enumerate(delta, start=1):
                value += coef * x_ext[t - i]
            x_ext[t] = value
        points = x_ext[x.size:]
    else:
        points = z_hat

    psi = psi_weights(model, h)
    se = np.sqrt(model.sigma2 * np.cumsum(psi * psi))
    bands = {}
    for level in levels:
        zq = normal_quantile((1.0 + level) / 2.0)
        bands[level] = (tuple(points - zq * se), tuple(points + zq * se))

    labels = tuple(series.period_label(len(series) - 1 + j)
                   for j in range(1, h + 1))
    return ForecastResult(
        origin=series.end(),
        horizon=h,
        points=tuple(points),
        bands=bands,
        labels=labels,
    )
