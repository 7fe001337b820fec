"""Tests for psi-weight expansion and interval forecasting."""

import math

import numpy as np
import pytest
from scipy import linalg

from iprkit.correlation import normal_quantile
from iprkit.estimation import ModelOrder, fit, simulate
from iprkit.forecasting import forecast, psi_weights
from iprkit.series import TimeSeries

# Published 13-step forecast of the fitted ARIMA(3,1,0):
# (label, point, lo95, hi95, lo99, hi99).
PUBLISHED_FORECAST = (
    ("2022 Q4", 0.009813194, 0.007555635, 0.01207075, 0.006846258, 0.01278013),
    ("2023 Q1", 0.010188966, 0.007899211, 0.01247872, 0.007179718, 0.01319821),
    ("2023 Q2", 0.011285177, 0.008988131, 0.01358222, 0.008266347, 0.01430401),
    ("2023 Q3", 0.012331074, 0.010032110, 0.01463004, 0.009309723, 0.01535242),
    ("2023 Q4", 0.010324032, 0.007436748, 0.01321132, 0.006529497, 0.01411857),
    ("2024 Q1", 0.010344669, 0.007396726, 0.01329261, 0.006470416, 0.01421892),
    ("2024 Q2", 0.011095404, 0.008128740, 0.01406207, 0.007196546, 0.01499426),
    ("2024 Q3", 0.011979663, 0.009006793, 0.01495253, 0.008072650, 0.01588668),
    ("2024 Q4", 0.010645356, 0.007364662, 0.01392605, 0.006333793, 0.01495692),
    ("2025 Q1", 0.010495367, 0.007140154, 0.01385058, 0.006085869, 0.01490487),
    ("2025 Q2", 0.010986983, 0.007601991, 0.01437198, 0.006538349, 0.01543562),
    ("2025 Q3", 0.011708469, 0.008311515, 0.01510542, 0.007244114, 0.01617282),
    ("2025 Q4", 0.010840548, 0.007257901, 0.01442320, 0.006132151, 0.01554895),
)


@pytest.fixture(scope="module")
def fixture_forecast(model310):
    return forecast(model310, 13, levels=(0.95, 0.99))


# ---------------------------------------------------------------------------
# Psi weights
# ---------------------------------------------------------------------------

def test_psi_weights_of_white_noise():
    model = fit(simulate(ModelOrder(), (), 1.0, 50, seed=20), ModelOrder())
    assert tuple(psi_weights(model, 5)) == (1.0, 0.0, 0.0, 0.0, 0.0)


def test_psi_weights_of_ar1_are_geometric():
    model = fit(simulate(ModelOrder(p=1), (0.7,), 1.0, 100, seed=21),
                ModelOrder(p=1))
    phi = model.ar[0]
    psi = psi_weights(model, 8)
    assert psi == pytest.approx([phi ** j for j in range(8)], abs=1e-12)


def test_psi_weights_of_arma11_closed_form():
    model = fit(simulate(ModelOrder(p=1, q=1), (0.6, 0.3), 1.0, 200, seed=22),
                ModelOrder(p=1, q=1))
    phi, theta = model.ar[0], model.ma[0]
    psi = psi_weights(model, 8)
    expected = [1.0] + [phi ** (j - 1) * (phi + theta) for j in range(1, 8)]
    assert psi == pytest.approx(expected, abs=1e-10)


def test_psi_weights_of_fixture_by_polynomial_division(model310):
    # psi solves (1 - phi(B))(1 - B) psi(B) = 1; invert the lower-triangular
    # Toeplitz system rather than running the expansion recursion.
    h = 13
    ar_poly = np.concatenate(([1.0], -np.asarray(model310.ar)))
    c = np.convolve(ar_poly, [1.0, -1.0])
    col = np.zeros(h)
    col[: c.size] = c
    rhs = np.zeros(h)
    rhs[0] = 1.0
    expected = linalg.solve_toeplitz((col, np.zeros(h)), rhs)
    assert psi_weights(model310, h) == pytest.approx(expected, abs=1e-10)
    # First weight beyond psi_0 is 1 + ar1 for this model.
    assert psi_weights(model310, 2)[1] == pytest.approx(1 + model310.ar[0],
                                                        abs=1e-12)
    assert psi_weights(model310, 2)[1] == pytest.approx(0.1695, abs=0.02)


def test_psi_weights_count_validation(model310):
    with pytest.raises(ValueError):
        psi_weights(model310, 0)


# ---------------------------------------------------------------------------
# The bundled series' published forecast
# ---------------------------------------------------------------------------

def test_fixture_forecast_points_and_labels(fixture_forecast):
    assert fixture_forecast.horizon == 13
    assert fixture_forecast.origin == (2022, 3)
    assert fixture_forecast.labels == tuple(
        row[0] for row in PUBLISHED_FORECAST)
    for got, row in zip(fixture_forecast.points, PUBLISHED_FORECAST):
        assert got == pytest.approx(row[1], abs=2e-4)


def test_fixture_forecast_bands(fixture_forecast):
    lo95, hi95 = fixture_forecast.band(0.95)
    lo99, hi99 = fixture_forecast.band(0.99)
    for j, row in enumerate(PUBLISHED_FORECAST):
        assert lo95[j] == pytest.approx(row[2], abs=3e-4)
        assert hi95[j] == pytest.approx(row[3], abs=3e-4)
        assert lo99[j] == pytest.approx(row[4], abs=3e-4)
        assert hi99[j] == pytest.approx(row[5], abs=3e-4)


def test_band_width_ratio_is_the_quantile_ratio(fixture_forecast):
    lo95, hi95 = fixture_forecast.band(0.95)
    lo99, hi99 = fixture_forecast.band(0.99)
    expected = normal_quantile(0.995) / normal_quantile(0.975)
    assert expected == pytest.approx(2.5758293 / 1.9599640, abs=1e-6)
    for j in range(13):
        ratio = (hi99[j] - lo99[j]) / (hi95[j] - lo95[j])
        assert ratio == pytest.approx(expected, abs=1e-6)


def test_first_step_width_is_sigma_times_z(model310, fixture_forecast):
    lo95, hi95 = fixture_forecast.band(0.95)
    half = (hi95[0] - lo95[0]) / 2.0
    assert half == pytest.approx(
        normal_quantile(0.975) * math.sqrt(model310.sigma2), rel=1e-6)


def test_band_nesting_and_growth(fixture_forecast):
    lo95, hi95 = fixture_forecast.band(0.95)
    lo99, hi99 = fixture_forecast.band(0.99)
    widths = [hi - lo for lo, hi in zip(lo95, hi95)]
    for j in range(13):
        assert lo99[j] < lo95[j] < hi95[j] < hi99[j]
    for a, b in zip(widths, widths[1:]):
        assert b >= a


# ---------------------------------------------------------------------------
# Structural properties on simple models
# ---------------------------------------------------------------------------

def test_white_noise_with_drift_forecasts_flat():
    series = simulate(ModelOrder(drift=True), (5.0,), 1.0, 60, seed=23)
    model = fit(series, ModelOrder(drift=True))
    result = forecast(model, 6)
    assert result.points == pytest.approx(
        (model.drift_coef,) * 6, abs=1e-12)
    lo, hi = result.band(0.95)
    widths = [b - a for a, b in zip(lo, hi)]
    assert widths == pytest.approx((widths[0],) * 6, abs=1e-12)


def test_white_noise_without_drift_forecasts_zero():
    series = simulate(ModelOrder(), (), 2.0, 60, seed=24)
    model = fit(series, ModelOrder())
    result = forecast(model, 4)
    assert result.points == (0.0,) * 4
    lo, hi = result.band(0.95)
    z = normal_quantile(0.975)
    for a, b in zip(lo, hi):
        assert (b - a) / 2.0 == pytest.approx(
            z * math.sqrt(model.sigma2), rel=1e-12)


def test_forecast_is_shift_equivariant():
    # Quantize to a dyadic grid so adding 4.0 is exact in float64 and the
    # differenced series (hence the fitted model) is bit-identical.
    raw = simulate(ModelOrder(p=1, d=1), (0.5,), 1.0, 60, seed=25).to_array()
    base_values = np.floor(raw * 2.0 ** 30) / 2.0 ** 30
    base = TimeSeries(tuple(base_values), (2000, 1), 1)
    shifted = TimeSeries(tuple(base_values + 4.0), (2000, 1), 1)
    order = ModelOrder(p=1, d=1)
    f_base = forecast(fit(base, order), 5)
    f_shift = forecast(fit(shifted, order), 5)
    for a, b in zip(f_base.points, f_shift.points):
        assert b - a == pytest.approx(4.0, abs=1e-10)


# ---------------------------------------------------------------------------
# Interface details
# ---------------------------------------------------------------------------

def test_forecast_validation(model310):
    with pytest.raises(ValueError):
        forecast(model310, 0)
    with pytest.raises(ValueError):
        forecast(model310, 5, levels=(1.5,))
    with pytest.raises(ValueError):
        forecast(model310, 5, levels=(0.0,))
    with pytest.raises(ValueError):
        forecast(model310, 5, levels=())


def test_forecast_deduplicates_levels(model310):
    result = forecast(model310, 2, levels=(0.95, 0.95, 0.8))
    assert sorted(result.bands) == [0.8, 0.95]


def test_forecast_text_table(fixture_forecast):
    lines = fixture_forecast.to_text(level=0.95)
    assert lines[0].split() == ["Point", "Forecast", "Lo", "95", "Hi", "95"]
    assert len(lines) == 14
    assert lines[1].startswith("2022 Q4")
    # Default level is the smallest one present.
    assert "Lo 95" in fixture_forecast.to_text()[0]
