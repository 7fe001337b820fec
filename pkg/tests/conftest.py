"""Shared fixtures: the bundled rate series and the headline model fit.

Session-scoped so the moderately expensive exact-likelihood fits happen once;
everything downstream (diagnostics, forecasting, CLI, acceptance) reuses the
same immutable objects.
"""

import pytest

from iprkit.estimation import ModelOrder, fit
from iprkit.ingest import load_fixture


@pytest.fixture(scope="session")
def ipr():
    """The bundled quarterly penetration-rate series (39 observations)."""
    return load_fixture()


@pytest.fixture(scope="session")
def model310(ipr):
    """ARIMA(3,1,0) without drift fitted to the bundled series."""
    return fit(ipr, ModelOrder(p=3, d=1, q=0))
