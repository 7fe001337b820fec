"""Automatic ARIMA order selection.

`choose_d` picks the smallest amount of differencing that a KPSS level test
no longer rejects, and `auto_select` runs a stepwise search: fit a small set
of standard starting models, then sweep the incumbent's neighborhood in a
fixed order (one-step changes to the seasonal orders and their paired
changes, then the same for p and q, then a drift toggle), moving to the
first candidate that improves the criterion and restarting the sweep there.
Candidates already scored are never refitted — the incumbent always carries
the lowest score seen, so a skipped candidate cannot hide an improvement.
The search stops when a full sweep yields nothing better. Candidates whose
fit fails, whose roots come within 1.001 of the unit circle, or whose
criterion is undefined enter the trace with an infinite score. Fits inside
the search skip standard errors; the winner is refitted with them.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ComputationError, SelectionFailedError, SeriesLengthError
from .estimation import MAX_TOTAL_ORDER, ModelOrder, fit
from .series import difference
from .stationarity import kpss_test

__all__ = ["SearchConfig", "SearchTrace", "choose_d", "auto_select"]


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the stepwise search.

    criterion is one of "aic", "aicc", "bic". `d` and `D` of None mean
    "decide automatically" (KPSS-based for d, 0 for D). `seasonal=False`
    restricts the search to non-seasonal orders regardless of the series
    frequency; `stepwise=False` scores every order within the caps instead
    of walking.
    """

    criterion: str = "aic"
    max_p: int = 5
    max_q: int = 5
    max_P: int = 2
    max_Q: int = 2
    seasonal: bool = True
    stepwise: bool = True
    d: int | None = None
    D: int | None = None

    def __post_init__(self):
        if self.criterion not in ("aic", "aicc", "bic"):
            raise ValueError(f"unknown criterion {self.criterion!r}")
        for name in ("max_p", "max_q", "max_P", "max_Q"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class SearchTrace:
    """Every candidate the search scored, in evaluation order."""

    criterion: str
    entries: tuple

    def to_text(self):
        """Lines 'ARIMA(p,d,q)(P,D,Q)[s] with drift : value'."""
        lines = []
        for order, value in self.entries:
            shown = "Inf" if math.isinf(value) else f"{value:.7g}"
            lines.append(f" {order.describe():<36} : {shown}")
        return lines


def choose_d(ts, max_d=2, alpha=0.05):
    """Smallest d in 0..max_d whose d-th difference passes a KPSS level test.

    Returns max_d when even that much differencing still rejects.
    """
    if len(ts) < 10:
        raise SeriesLengthError("need at least 10 observations to choose d")
    for d in range(max_d + 1):
        z = ts if d == 0 else difference(ts, lag=1, times=d)
        if kpss_test(z, null="level").p_value > alpha:
            return d
    return max_d


def _candidate_orders(p, q, big_p, big_q, drift, limits, allow_drift):
    """Neighbors of the incumbent, in the fixed sweep order the walk uses:
    seasonal single steps, seasonal paired steps, non-seasonal single steps,
    non-seasonal paired steps, drift toggle."""
    max_p, max_q, max_sp, max_sq = limits
    moves = [
        (p, q, big_p - 1, big_q, drift),
        (p, q, big_p, big_q - 1, drift),
        (p, q, big_p + 1, big_q, drift),
        (p, q, big_p, big_q + 1, drift),
        (p, q, big_p - 1, big_q - 1, drift),
        (p, q, big_p - 1, big_q + 1, drift),
        (p, q, big_p + 1, big_q - 1, drift),
        (p, q, big_p + 1, big_q + 1, drift),
        (p - 1, q, big_p, big_q, drift),
        (p, q - 1, big_p, big_q, drift),
        (p + 1, q, big_p, big_q, drift),
        (p, q + 1, big_p, big_q, drift),
        (p - 1, q - 1, big_p, big_q, drift),
        (p - 1, q + 1, big_p, big_q, drift),
        (p + 1, q - 1, big_p, big_q, drift),
        (p + 1, q + 1, big_p, big_q, drift),
    ]
    if allow_drift:
        moves.append((p, q, big_p, big_q, not drift))
    keep = []
    for cand in moves:
        cp, cq, csp, csq, _ = cand
        if not (0 <= cp <= max_p and 0 <= cq <= max_q
                and 0 <= csp <= max_sp and 0 <= csq <= max_sq):
            continue
        if cp + cq + csp + csq > MAX_TOTAL_ORDER:
            continue
        if cand not in keep:
            keep.append(cand)
    return keep


def _grid_orders(limits, allow_drift):
    max_p, max_q, max_sp, max_sq = limits
    out = []
    for p in range(max_p + 1):
        for q in range(max_q + 1):
            for big_p in range(max_sp + 1):
                for big_q in range(max_sq + 1):
                    if p + q + big_p + big_q > MAX_TOTAL_ORDER:
                        continue
                    out.append((p, q, big_p, big_q, False))
                    if allow_drift:
                        out.append((p, q, big_p, big_q, True))
    return out


def auto_select(ts, config=None):
    """Select an ARIMA order for `ts` and fit it.

    Results are memoized on (series, config) — both are immutable — so
    repeated selections over the same data cost one search.

    Parameters
    ----------
    ts : TimeSeries
    config : SearchConfig, optional

    Returns
    -------
    (FittedModel, SearchTrace)

    Raises
    ------
    SeriesLengthError when the series is shorter than 10 points;
    SelectionFailedError when no candidate fits.
    """
    return _auto_select_cached(ts, config if config is not None
                               else SearchConfig())


@lru_cache(maxsize=8)
def _auto_select_cached(ts, config):
    if len(ts) < 10:
        raise SeriesLengthError(
            "need at least 10 observations for order selection")

    d = config.d if config.d is not None else choose_d(ts)
    seasonal = config.seasonal and ts.frequency >= 2
    big_d = (config.D if config.D is not None else 0) if seasonal else 0
    s = ts.frequency if seasonal else 1
    limits = (config.max_p, config.max_q,
              config.max_P if seasonal else 0,
              config.max_Q if seasonal else 0)
    allow_drift = (d + big_d) <= 1

    memo = {}
    trace_entries = []

    def evaluate(key):
        if key in memo:
            return memo[key][1]
        p, q, big_p, big_q, drift = key
        order = ModelOrder(p=p, d=d, q=q, P=big_p, D=big_d, Q=big_q, s=s,
                           drift=drift)
        try:
            model = fit(ts, order, compute_se=False)
            value = float(getattr(model, config.criterion))
        except ComputationError:
            model, value = None, math.inf
        if not math.isfinite(value):
            model, value = None, math.inf
        memo[key] = (model, value)
        trace_entries.append((order, value))
        return value

    def rank(key):
        return (memo[key][1], sum(key[:4]) + key[4], key)

    if config.stepwise:
        max_p, max_q, max_sp, max_sq = limits
        starts = [
            (min(2, max_p), min(2, max_q), min(1, max_sp), min(1, max_sq),
             allow_drift),
            (0, 0, 0, 0, allow_drift),
            (min(1, max_p), 0, min(1, max_sp), 0, allow_drift),
            (0, min(1, max_q), 0, min(1, max_sq), allow_drift),
        ]
        if allow_drift:
            starts.append((0, 0, 0, 0, False))
        seen = []
        for key in starts:
            if key not in seen:
                seen.append(key)
                evaluate(key)
        current = min(memo, key=rank)
        if math.isinf(memo[current][1]):
            raise SelectionFailedError("no starting model could be fitted")
        improved = True
        while improved:
            improved = False
            p, q, big_p, big_q, drift = current
            for cand in _candidate_orders(p, q, big_p, big_q, drift,
                                          limits, allow_drift):
                if cand in memo:
                    continue
                if evaluate(cand) < memo[current][1]:
                    current = cand
                    improved = True
                    break
    else:
        for key in _grid_orders(limits, allow_drift):
            evaluate(key)

    finite = [key for key in memo if math.isfinite(memo[key][1])]
    if not finite:
        raise SelectionFailedError("every candidate model failed to fit")
    best_key = min(finite, key=rank)
    p, q, big_p, big_q, drift = best_key
    best_order = ModelOrder(p=p, d=d, q=q, P=big_p, D=big_d, Q=big_q, s=s,
                            drift=drift)
    model = fit(ts, best_order, compute_se=True)
    return model, SearchTrace(criterion=config.criterion,
                              entries=tuple(trace_entries))
