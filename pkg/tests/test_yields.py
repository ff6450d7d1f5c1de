from __future__ import annotations

import math
from collections.abc import Callable
from datetime import date
from typing import TYPE_CHECKING

import pytest

from liquidity_premium.engine import bond_yield, liquidity_yield_spread, yield_from_flows
from liquidity_premium.errors import ModelDomainError
from liquidity_premium.termstructure import BondSpec, IssuerCurve, price_liquid_bond

if TYPE_CHECKING:
    from liquidity_premium.configuration import RunConfig
    from liquidity_premium.hw_model import HWParams
    from liquidity_premium.pipeline import Curves

SETTLEMENT = date(2015, 9, 14)


class TestYieldFromFlows:
    """Test `yield_from_flows` and `bond_yield`."""

    def test_single_flow(self) -> None:
        """Test 100 in two years bought at 90."""
        assert yield_from_flows(90.0, [(2.0, 100.0)]) == pytest.approx(
            -math.log(0.9) / 2.0, abs=1e-14
        )

    def test_negative_yield(self) -> None:
        """Test a price above the flows gives a negative yield."""
        assert yield_from_flows(101.0, [(1.0, 100.0)]) == pytest.approx(
            -math.log(1.01), abs=1e-14
        )

    def test_flat_curve_round_trip(self, flat_issuer: Callable[..., IssuerCurve]) -> None:
        """Test a coupon bond priced off a flat continuous curve yields that rate."""
        issuer = flat_issuer(rate=0.015, zeta=0.01)
        bond = BondSpec.annual("FLAT", date(2024, 5, 20), 0.02375, settle=SETTLEMENT)
        price = price_liquid_bond(bond, issuer)
        assert abs(bond_yield(price, bond, issuer) - 0.025) < 1e-12

    def test_price_must_be_positive(self) -> None:
        """Test a yield needs a positive price."""
        with pytest.raises(ModelDomainError, match="positive price"):
            yield_from_flows(0.0, [(1.0, 100.0)])

    def test_no_yield_in_bracket(self) -> None:
        """Test a price out of reach of every yield in the bracket raises."""
        with pytest.raises(ModelDomainError, match="No yield in"):
            yield_from_flows(1e6, [(2.0, 100.0)])


class TestLiquidityYieldSpread:
    """Test the shape of `liquidity_yield_spread` on the bundled samples."""

    @pytest.fixture(params=["bnpp", "santander"])
    def sample(self, request: pytest.FixtureRequest) -> tuple[RunConfig, Curves]:
        """Configuration and curves of each bundled issuer."""
        return (
            request.getfixturevalue(f"{request.param}_config"),
            request.getfixturevalue(f"{request.param}_curves"),
        )

    @staticmethod
    def _spreads(config: RunConfig, curves: Curves, ttl: float) -> list[float]:
        return [
            liquidity_yield_spread(bond, curves.issuer, config.params, ttl)
            for bond in curves.bonds
        ]

    def test_illiquid_yield_is_higher(self, sample: tuple[RunConfig, Curves]) -> None:
        """Test every bond yields more when it cannot be sold at once."""
        config, curves = sample
        for _, ttl in config.ttl_years():
            assert all(spread > 0.0 for spread in self._spreads(config, curves, ttl))

    def test_longer_ttl_is_wider(self, sample: tuple[RunConfig, Curves]) -> None:
        """Test two months cost more than two weeks for every bond."""
        config, curves = sample
        ttls = dict(config.ttl_years())
        short = self._spreads(config, curves, ttls["2w"])
        long = self._spreads(config, curves, ttls["2m"])
        assert all(wide > narrow for narrow, wide in zip(short, long))

    def test_nearly_flat_in_maturity(self, sample: tuple[RunConfig, Curves]) -> None:
        """Test the spread depends only slightly on the bond maturity."""
        config, curves = sample
        for _, ttl in config.ttl_years():
            spreads = self._spreads(config, curves, ttl)
            mean = sum(spreads) / len(spreads)
            assert (max(spreads) - min(spreads)) / mean < 0.5

    def test_zero_ttl(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test no ttl means no spread."""
        bond = bnpp_curves.bonds[-1]
        assert liquidity_yield_spread(bond, bnpp_curves.issuer, calibrated, 0.0) == 0.0
