from __future__ import annotations

import math
from collections.abc import Callable
from datetime import date

import pytest
from dateutil.relativedelta import relativedelta

from liquidity_premium.configuration import RunConfig, load_config
from liquidity_premium.data import sample_config
from liquidity_premium.hw_model import HWParams
from liquidity_premium.pipeline import Curves, build_curves
from liquidity_premium.termstructure import DiscountCurve, IssuerCurve

SETTLEMENT = date(2015, 9, 14)
"""Settlement of the bundled samples: 10 September 2015 plus two business days."""


@pytest.fixture(scope="session")
def calibrated() -> HWParams:
    """Calibrated EUR parameters (0.1294, 0.0126, 0.0007)."""
    return HWParams()


@pytest.fixture(scope="session")
def bnpp_config() -> RunConfig:
    """Bundled BNPP run configuration."""
    return load_config(sample_config("bnpp"))


@pytest.fixture(scope="session")
def santander_config() -> RunConfig:
    """Bundled Santander run configuration."""
    return load_config(sample_config("santander"))


@pytest.fixture(scope="session")
def bnpp_curves(bnpp_config: RunConfig) -> Curves:
    """Curves bootstrapped from the BNPP bond table and the bundled OIS quotes."""
    return build_curves(bnpp_config)


@pytest.fixture(scope="session")
def santander_curves(santander_config: RunConfig) -> Curves:
    """Curves bootstrapped from the Santander bond table and the bundled OIS quotes."""
    return build_curves(santander_config)


@pytest.fixture
def flat_issuer() -> Callable[..., IssuerCurve]:
    """Factory of an issuer curve with flat risk-free rate and flat Zeta spread."""

    def make(rate: float = 0.0, zeta: float = 0.0, anchor: date = SETTLEMENT) -> IssuerCurve:
        far = anchor + relativedelta(years=40)
        horizon = (far - anchor).days / 365.0
        discount = DiscountCurve(anchor=anchor, knots=((far, math.exp(-rate * horizon)),))
        return IssuerCurve(anchor=anchor, knots=((far, zeta),), discount=discount, issuer="FLAT")

    return make
