"""Tests for the TimeSeries value type, differencing, and summaries."""

import numpy as np
import pytest

from iprkit.errors import SeriesLengthError
from iprkit.series import TimeSeries, difference, integrate, summary


def test_values_coerced_to_float_tuple():
    ts = TimeSeries((1, 2, 3), (2000, 1), 1)
    assert ts.values == (1.0, 2.0, 3.0)
    assert all(isinstance(v, float) for v in ts.values)


def test_empty_series_rejected():
    with pytest.raises(SeriesLengthError):
        TimeSeries((), (2000, 1), 1)


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
def test_non_finite_values_rejected(bad):
    with pytest.raises(ValueError):
        TimeSeries((1.0, bad), (2000, 1), 1)


def test_start_period_must_fit_frequency():
    with pytest.raises(ValueError):
        TimeSeries((1.0, 2.0), (2000, 5), 4)
    with pytest.raises(ValueError):
        TimeSeries((1.0, 2.0), (2000, 0), 4)


def test_frequency_must_be_positive():
    with pytest.raises(ValueError):
        TimeSeries((1.0, 2.0), (2000, 1), 0)


def test_sequence_protocol():
    ts = TimeSeries((5.0, 6.0, 7.0), (2000, 1), 4)
    assert len(ts) == 3
    assert list(ts) == [5.0, 6.0, 7.0]
    assert ts[1] == 6.0
    assert ts.to_array().dtype == np.float64


def test_quarterly_period_labels():
    ts = TimeSeries(tuple(range(1, 7)), (2013, 1), 4)
    labels = [ts.period_label(i) for i in range(6)]
    assert labels == ["2013 Q1", "2013 Q2", "2013 Q3", "2013 Q4",
                      "2014 Q1", "2014 Q2"]


def test_annual_period_labels():
    ts = TimeSeries((1.0, 2.0), (2013, 1), 1)
    assert ts.period_label(0) == "2013"
    assert ts.period_label(1) == "2014"


def test_period_label_continues_past_the_data():
    # Forecast labelling walks the calendar beyond the last observation.
    ts = TimeSeries((1.0, 2.0, 3.0), (2022, 1), 4)
    assert ts.period_label(3) == "2022 Q4"
    assert ts.period_label(4) == "2023 Q1"


def test_end():
    ts = TimeSeries(tuple(range(5)), (2013, 3), 4)
    assert ts.end() == (2014, 3)


def test_difference_by_hand():
    # (1, 3, 6, 10) has first differences (2, 3, 4).
    ts = TimeSeries((1.0, 3.0, 6.0, 10.0), (2013, 1), 4)
    d = difference(ts)
    assert d.values == (2.0, 3.0, 4.0)
    assert d.start == (2013, 2)
    assert d.frequency == 4


def test_difference_twice_matches_nested_single_passes():
    rng = np.random.default_rng(3)
    ts = TimeSeries(tuple(rng.standard_normal(20)), (2000, 1), 4)
    assert difference(ts, 1, 2).values == difference(difference(ts)).values


def test_seasonal_difference_advances_a_full_year():
    ts = TimeSeries(tuple(range(10)), (2013, 1), 4)
    d = difference(ts, lag=4)
    assert d.values == (4.0,) * 6
    assert d.start == (2014, 1)


def test_difference_validation():
    ts = TimeSeries((1.0, 2.0, 3.0), (2013, 1), 4)
    with pytest.raises(ValueError):
        difference(ts, lag=0)
    with pytest.raises(ValueError):
        difference(ts, times=0)
    with pytest.raises(SeriesLengthError):
        difference(ts, lag=3)


@pytest.mark.parametrize("lag", [1, 4])
def test_integrate_inverts_difference_exactly(ipr, lag):
    d = difference(ipr, lag=lag)
    rebuilt = integrate(d, ipr.values[:lag], lag=lag)
    assert rebuilt.values == ipr.values
    assert rebuilt.start == ipr.start
    assert rebuilt.frequency == ipr.frequency


def test_integrate_requires_matching_seed_length():
    ts = TimeSeries((1.0, 2.0, 3.0), (2013, 2), 4)
    with pytest.raises(ValueError):
        integrate(ts, (1.0, 2.0), lag=1)


def test_summary_with_interpolated_quartiles():
    # For (1, 2, 3, 4) the quantile rank h = (n-1)p lands between order
    # statistics: q1 = 1.75, median = 2.5, q3 = 3.25.
    ts = TimeSeries((4.0, 1.0, 3.0, 2.0), (2000, 1), 1)
    stats = summary(ts)
    assert stats.min == 1.0
    assert stats.q1 == pytest.approx(1.75)
    assert stats.median == pytest.approx(2.5)
    assert stats.mean == pytest.approx(2.5)
    assert stats.q3 == pytest.approx(3.25)
    assert stats.max == 4.0


def test_summary_of_constant_series():
    stats = summary(TimeSeries((2.0, 2.0, 2.0), (2000, 1), 1))
    assert (stats.min, stats.median, stats.max) == (2.0, 2.0, 2.0)
