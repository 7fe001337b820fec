"""Tests for residual diagnostics and forecast-accuracy metrics."""

import math

import numpy as np
import pytest
from scipy import stats

from iprkit.diagnostics import accuracy, ks_normality, ljung_box
from iprkit.errors import (
    DegenerateSeriesError,
    DegreesOfFreedomError,
    SeriesLengthError,
    UndefinedMetricError,
)

PUBLISHED_ACCURACY = {
    "me": 0.0001097798,
    "rmse": 0.001091171,
    "mae": 0.0008645403,
    "mpe": 0.01008047,
    "mape": 9.131175,
    "mase": 0.9477387,
    "acf1": -0.0580795,
}


# ---------------------------------------------------------------------------
# Ljung-Box
# ---------------------------------------------------------------------------

def test_ljung_box_matches_hand_computation():
    x = np.random.default_rng(40).standard_normal(20)
    lags = 5
    centered = x - x.mean()
    c0 = float(np.dot(centered, centered))
    q = 0.0
    for k in range(1, lags + 1):
        rk = float(np.dot(centered[k:], centered[:-k])) / c0
        q += rk * rk / (x.size - k)
    q *= x.size * (x.size + 2.0)

    report = ljung_box(tuple(x), lags=lags, fitdf=2)
    assert report.q_stat == pytest.approx(q, abs=1e-10)
    assert report.lags_used == 5
    assert report.fitdf == 2
    assert report.df == 3
    assert report.p_value == pytest.approx(float(stats.chi2.sf(q, 3)),
                                           abs=1e-12)


def test_ljung_box_zero_autocorrelation_vector():
    # Every lag-1 product of (1, 0, -1, 0, ...) has a zero factor, so the
    # statistic is exactly zero and the p-value exactly one.
    x = (1.0, 0.0, -1.0, 0.0) * 5
    report = ljung_box(x, lags=1)
    assert report.q_stat == 0.0
    assert report.p_value == 1.0


def test_ljung_box_default_lags(model310):
    report = ljung_box(model310.full_residuals)
    assert report.lags_used == 7  # min(10, 39 // 5)


def test_ljung_box_on_fixture_residuals(model310):
    report = ljung_box(model310.full_residuals, lags=8, fitdf=3)
    assert report.q_stat == pytest.approx(5.1367, abs=0.2)
    assert report.df == 5
    assert report.p_value == pytest.approx(0.3994, abs=0.05)
    text = report.to_text()
    assert "Ljung-Box Q" in text and "p-value" in text


def test_ljung_box_validation():
    x = tuple(float(i % 4) for i in range(30))
    with pytest.raises(DegreesOfFreedomError):
        ljung_box(x, lags=3, fitdf=3)
    with pytest.raises(DegreesOfFreedomError):
        ljung_box(x, lags=0)
    with pytest.raises(SeriesLengthError):
        ljung_box(x, lags=30)
    with pytest.raises(ValueError):
        ljung_box(x, lags=5, fitdf=-1)


def test_ljung_box_pvalues_are_uniform_under_the_null():
    # 500 white-noise replications: the p-value ECDF should hug the
    # diagonal if the chi-square calibration is right.
    ps = []
    for seed in range(500):
        x = np.random.default_rng(seed).standard_normal(200)
        ps.append(ljung_box(tuple(x)).p_value)
    ps = np.sort(ps)
    k = np.arange(1, ps.size + 1)
    distance = max(np.max(k / ps.size - ps), np.max(ps - (k - 1) / ps.size))
    assert distance < 0.1


# ---------------------------------------------------------------------------
# Kolmogorov-Smirnov normality check
# ---------------------------------------------------------------------------

def test_ks_matches_scipy():
    x = np.random.default_rng(33).standard_normal(500)
    ref = stats.kstest(x, "norm", args=(x.mean(), x.std(ddof=1)),
                       mode="asymp")
    report = ks_normality(tuple(x))
    assert report.d_stat == pytest.approx(float(ref.statistic), abs=1e-12)
    assert report.p_value == pytest.approx(float(ref.pvalue), abs=1e-12)
    assert report.params_estimated


def test_ks_accepts_normal_data():
    x = np.random.default_rng(33).standard_normal(500)
    assert ks_normality(tuple(x)).p_value > 0.05


def test_ks_rejects_skewed_data():
    x = np.random.default_rng(32).exponential(size=500)
    assert ks_normality(tuple(x)).p_value < 1e-6


def test_ks_on_fixture_residuals(model310):
    report = ks_normality(model310.full_residuals)
    assert 0.0 < report.d_stat < 1.0
    assert 0.0 <= report.p_value <= 1.0
    assert "Kolmogorov-Smirnov" in report.to_text()


def test_ks_validation():
    with pytest.raises(SeriesLengthError):
        ks_normality((0.1, 0.2, 0.3, 0.4))
    with pytest.raises(DegenerateSeriesError):
        ks_normality((2.0,) * 10)


# ---------------------------------------------------------------------------
# Accuracy metrics
# ---------------------------------------------------------------------------

def test_accuracy_perfect_predictions():
    y = (1.0, 2.0, 3.0, 4.0, 5.0)
    report = accuracy(y, y, y)
    assert (report.me, report.rmse, report.mae) == (0.0, 0.0, 0.0)
    assert (report.mpe, report.mape, report.mase) == (0.0, 0.0, 0.0)
    assert math.isnan(report.acf1)


def test_accuracy_of_naive_forecast_is_one():
    y = np.random.default_rng(41).uniform(1.0, 2.0, 60)
    report = accuracy(tuple(y[1:]), tuple(y[:-1]), tuple(y), naive_lag=1)
    assert report.mase == 1.0


def test_accuracy_error_metrics_are_translation_invariant():
    rng = np.random.default_rng(42)
    y = rng.uniform(5.0, 6.0, 40)
    f = y + rng.normal(0.0, 0.1, 40)
    base = accuracy(tuple(y), tuple(f), tuple(y))
    shifted = accuracy(tuple(y + 100.0), tuple(f + 100.0), tuple(y + 100.0))
    for name in ("me", "rmse", "mae", "mase", "acf1"):
        assert getattr(shifted, name) == pytest.approx(
            getattr(base, name), abs=1e-12)
    assert shifted.mape != pytest.approx(base.mape)


def test_accuracy_on_fixture_fit(model310, ipr):
    y = np.asarray(ipr.values)
    fitted = y - np.asarray(model310.full_residuals.values)
    report = accuracy(tuple(y), tuple(fitted), ipr, naive_lag=4)
    for name, value in PUBLISHED_ACCURACY.items():
        assert getattr(report, name) == pytest.approx(value, rel=5e-2), name


def test_accuracy_metric_identities():
    rng = np.random.default_rng(43)
    y = rng.uniform(1.0, 3.0, 50)
    f = y + rng.normal(0.0, 0.2, 50)
    report = accuracy(tuple(y), tuple(f), tuple(y))
    e = y - f
    assert report.rmse ** 2 == pytest.approx(float(np.mean(e * e)),
                                             rel=1e-12)
    assert report.mae <= report.rmse


def test_accuracy_lag1_error_autocorrelation():
    e = np.array([1.0, -1.0] * 4)
    report = accuracy(tuple(e + 10.0), (10.0,) * 8, tuple(e + 10.0))
    assert report.acf1 == pytest.approx(-7.0 / 8.0, abs=1e-12)


def test_accuracy_rejects_zero_actuals():
    with pytest.raises(UndefinedMetricError, match="index 1"):
        accuracy((1.0, 0.0, 2.0), (1.0, 1.0, 1.0), (1.0, 2.0, 3.0))


def test_accuracy_rejects_degenerate_training():
    with pytest.raises(UndefinedMetricError):
        accuracy((1.0, 2.0), (1.0, 1.0), (3.0, 3.0, 3.0))
    with pytest.raises(SeriesLengthError):
        accuracy((1.0, 2.0), (1.0, 1.0), (3.0, 3.0, 3.0), naive_lag=4)


def test_accuracy_input_validation():
    with pytest.raises(ValueError):
        accuracy((1.0, 2.0), (1.0,), (1.0, 2.0))
    with pytest.raises(SeriesLengthError):
        accuracy((), (), (1.0, 2.0))
    with pytest.raises(ValueError):
        accuracy((1.0,), (1.0,), (1.0, 2.0), naive_lag=0)


def test_accuracy_text_layout():
    report = accuracy((1.0, 2.0), (1.0, 1.0), (1.0, 2.0, 4.0))
    header, row = report.to_text()
    assert header.split() == ["ME", "RMSE", "MAE", "MPE", "MAPE", "MASE",
                              "ACF1"]
    assert len(row.split()) == 7
