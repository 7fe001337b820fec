"""Exception hierarchy shared across the toolkit.

Three broad families matter to callers (and to the CLI's exit codes):
usage problems are raised by the CLI itself, data problems derive from
:class:`DataError`, and numerical/statistical problems derive from
:class:`ComputationError`.
"""


class IprkitError(Exception):
    """Base class for every error raised by this package."""


class DataError(IprkitError):
    """A problem with input data (files, rows, labels)."""


class EmptyInputError(DataError):
    """An input file or record sequence contained no data rows."""


class MalformedRowError(DataError):
    """A CSV row could not be parsed; the message names line and column."""


class DuplicatePeriodError(DataError):
    """The same year/quarter label appeared more than once."""


class PeriodGapError(DataError):
    """Quarters are not contiguous; the message lists the missing labels."""


class ComputationError(IprkitError):
    """A numerical or statistical operation could not be completed."""


class SeriesLengthError(ComputationError):
    """A series is too short for the requested operation."""


class DegenerateSeriesError(ComputationError):
    """A zero-variance (constant) series where variation is required."""


class SingularDesignError(ComputationError):
    """A regression design matrix was rank deficient."""


class FitFailedError(ComputationError):
    """The likelihood optimizer failed to produce a usable model."""


class NearUnitRootError(ComputationError):
    """A fitted polynomial root came within the rejection radius of the
    unit circle (non-stationary or non-invertible for practical purposes)."""


class DegreesOfFreedomError(ComputationError):
    """Not enough degrees of freedom (e.g. Ljung-Box lags <= fitdf, or
    AICc undefined because n <= k+1)."""


class UndefinedMetricError(ComputationError):
    """A metric is undefined for the given data (e.g. MPE/MAPE with a zero
    actual value); the message names the offending index."""


class SelectionFailedError(ComputationError):
    """No candidate model could be fitted during order selection."""
