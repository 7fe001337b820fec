"""Time-series value type, differencing/integration, and summary statistics.

A :class:`TimeSeries` is an immutable sequence of finite floats plus calendar
metadata (start period and periods-per-year frequency). The calendar is pure
metadata: every computation in the package operates on the value sequence and
only labels consult the calendar.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import SeriesLengthError

__all__ = ["TimeSeries", "SummaryStats", "difference", "integrate", "summary"]


def _shift_period(start, frequency, steps):
    """Advance a (year, period) pair by `steps` periods (may be negative)."""
    year, period = start
    index = year * frequency + (period - 1) + steps
    return (index // frequency, index % frequency + 1)


@dataclass(frozen=True)
class TimeSeries:
    """Ordered real observations with a calendar start and frequency.

    Parameters
    ----------
    values : sequence of float
        The observations; must be non-empty and finite (no missing values).
    start : (int, int)
        (year, period) of the first observation, with 1 <= period <= frequency.
    frequency : int
        Periods per year (4 for quarterly data); must be >= 1.
    """

    values: tuple = field()
    start: tuple = (1, 1)
    frequency: int = 1

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 1:
            raise SeriesLengthError("a TimeSeries needs at least one value")
        if not np.all(np.isfinite(values)):
            raise ValueError("TimeSeries values must all be finite")
        if self.frequency < 1:
            raise ValueError("frequency must be >= 1")
        year, period = self.start
        if not 1 <= period <= self.frequency:
            raise ValueError(
                f"start period {period} outside 1..{self.frequency}"
            )
        object.__setattr__(self, "start", (int(year), int(period)))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def to_array(self):
        """Values as a float64 numpy array (a copy; the series is immutable)."""
        return np.asarray(self.values, dtype=np.float64)

    def period_label(self, i):
        """Human-readable label of observation i, e.g. '2013 Q1'.

        For frequency 1 the label is just the year.
        """
        year, period = _shift_period(self.start, self.frequency, i)
        if self.frequency == 1:
            return str(year)
        return f"{year} Q{period}"

    def end(self):
        """(year, period) of the final observation."""
        return _shift_period(self.start, self.frequency, len(self) - 1)


@dataclass(frozen=True)
class SummaryStats:
    """Six-number summary: min, first quartile, median, mean, third quartile, max."""

    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float


def difference(ts, lag=1, times=1):
    """Difference a series `times` times at the given lag.

    Each pass replaces Y_t by Y_t - Y_{t-lag}; the start index advances by
    `lag` periods per pass, so the result stays calendar-aligned.

    Parameters
    ----------
    ts : TimeSeries
    lag : int, >= 1
        1 for ordinary differencing, the seasonal period for seasonal
        differencing.
    times : int, >= 1
        Number of passes (the differencing order).

    Returns
    -------
    TimeSeries of length len(ts) - lag*times.
    """
    if lag < 1 or times < 1:
        raise ValueError("lag and times must be >= 1")
    if len(ts) <= lag * times:
        raise SeriesLengthError(
            f"cannot difference a series of length {len(ts)} "
            f"{times} time(s) at lag {lag}"
        )
    values = ts.to_array()
    for _ in range(times):
        values = values[lag:] - values[:-lag]
    start = _shift_period(ts.start, ts.frequency, lag * times)
    return TimeSeries(tuple(values), start, ts.frequency)


def integrate(diffed, seed_values, lag=1):
    """Invert one pass of :func:`difference`.

    Given the lag-`lag` differences and the first `lag` values of the original
    series, rebuilds the original. Exact inverse: for series whose neighboring
    values are within a factor of two of each other (every positive economic
    series in practice) the reconstruction is bit-identical.

    Parameters
    ----------
    diffed : TimeSeries
        Output of difference(ts, lag, 1).
    seed_values : sequence of float
        The first `lag` values of the undifferenced series.
    lag : int

    Returns
    -------
    TimeSeries of length len(diffed) + lag, starting `lag` periods earlier.
    """
    seed = [float(v) for v in seed_values]
    if len(seed) != lag:
        raise ValueError(
            f"need exactly {lag} seed value(s), got {len(seed)}"
        )
    out = list(seed)
    for d in diffed.values:
        out.append(out[-lag] + d)
    start = _shift_period(diffed.start, diffed.frequency, -lag)
    return TimeSeries(tuple(out), start, diffed.frequency)


def summary(ts):
    """Six-number summary with quartiles by linear interpolation.

    Quartile convention: the value at rank h = (n-1)p + 1, interpolating
    linearly between order statistics (the default of numpy's quantile).
    """
    values = ts.to_array()
    q1, median, q3 = np.quantile(values, [0.25,  0.5, 0.75])
    return SummaryStats(
        min=float(values.min()),
        q1=float(q1),
        median=float(median),
        mean=float(values.mean()),
        q3=float(q3),
        max=float(values.max()),
    )
