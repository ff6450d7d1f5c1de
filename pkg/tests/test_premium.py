from __future__ import annotations

import itertools
import math
from collections.abc import Callable
from datetime import date
from typing import TYPE_CHECKING

import numpy as np
import pytest

from liquidity_premium.engine import (
    decompose_zc,
    forward_coupon_bond,
    forward_weights,
    illiquid_discount,
    illiquid_price,
    pi_factors,
    pi_upper,
    premium_bounds,
    sheer_spread,
    split_flows,
)
from liquidity_premium.errors import ModelDomainError
from liquidity_premium.hw_model import HWParams, survival_probability, vol_bundle
from liquidity_premium.termstructure import BondSpec, IssuerCurve, price_liquid_bond

if TYPE_CHECKING:
    from liquidity_premium.pipeline import Curves

SETTLEMENT = date(2015, 9, 14)

TWO_WEEKS = 14 / 365
TWO_MONTHS = 61 / 365


@pytest.fixture
def ten_year_zero() -> BondSpec:
    """Zero-coupon bond repaying 100 on 14 September 2025."""
    return BondSpec.annual("FLAT", date(2025, 9, 14), 0.0, settle=SETTLEMENT)


class TestSplitFlows:
    """Test `split_flows` and the forward coupon bond."""

    def test_flow_at_ttl_is_stripped(self, flat_issuer: Callable[..., IssuerCurve]) -> None:
        """Test a coupon paid exactly at the ttl is priced as liquid."""
        issuer = flat_issuer(rate=0.01)
        bond = BondSpec.annual("FLAT", date(2017, 9, 14), 0.02, settle=SETTLEMENT)
        first = issuer.time(date(2016, 9, 14))
        stripped, retained = split_flows(bond, issuer, first)
        assert stripped == pytest.approx(2.0 * issuer.defaultable_discount_at(first), abs=1e-14)
        assert [flow.amount for flow in retained] == [pytest.approx(102.0)]

    def test_forward_coupon_bond(self, bnpp_curves: Curves) -> None:
        """Test the forward bond is the retained value over B̄(t0, τ)."""
        bond, issuer = bnpp_curves.bonds[-1], bnpp_curves.issuer
        _, retained = split_flows(bond, issuer, TWO_MONTHS)
        expected = sum(flow.present_value for flow in retained) / issuer.defaultable_discount_at(
            TWO_MONTHS
        )
        assert forward_coupon_bond(bond, issuer, TWO_MONTHS) == pytest.approx(expected, rel=1e-14)
        assert len(forward_weights(bond, issuer, TWO_MONTHS)) == len(retained)


class TestPremiumBounds:
    """Test `pi_factors` and `premium_bounds`."""

    def test_no_volatility_no_default(
        self, flat_issuer: Callable[..., IssuerCurve], ten_year_zero: BondSpec
    ) -> None:
        """Test a frozen, default-free bond carries no premium."""
        p = HWParams(sigma_hat=0.0)
        assert premium_bounds(ten_year_zero, flat_issuer(rate=0.01), p, TWO_MONTHS) == (0.0, 0.0)

    def test_no_volatility_is_default_only(self, flat_issuer: Callable[..., IssuerCurve]) -> None:
        """Test without volatility both bounds are (1 - P) times the retained value."""
        p = HWParams(sigma_hat=0.0)
        issuer = flat_issuer(rate=0.01, zeta=0.02)
        bond = BondSpec.annual("FLAT", date(2020, 9, 14), 0.03, settle=SETTLEMENT)
        _, retained = split_flows(bond, issuer, TWO_MONTHS)
        expected = (1.0 - survival_probability(p, issuer, TWO_MONTHS)) * sum(
            flow.present_value for flow in retained
        )
        lower, upper = premium_bounds(bond, issuer, p, TWO_MONTHS)
        assert lower == pytest.approx(expected, rel=1e-12)
        assert upper == pytest.approx(expected, rel=1e-12)

    def test_zero_ttl(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test a bond that can be sold at once carries no premium."""
        assert premium_bounds(bnpp_curves.bonds[0], bnpp_curves.issuer, calibrated, 0.0) == (
            0.0,
            0.0,
        )

    @pytest.mark.parametrize("ttl", [TWO_WEEKS, TWO_MONTHS])
    def test_bounds_are_tight(self, bnpp_curves: Curves, calibrated: HWParams, ttl: float) -> None:
        """Test the ten-year BNPP bond bounds are ordered and within 1e-6 per 100 face."""
        lower, upper = premium_bounds(bnpp_curves.bonds[-1], bnpp_curves.issuer, calibrated, ttl)
        assert 0.0 < lower <= upper
        assert upper - lower < 1e-6

    def test_factors_are_sandwiched(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test 1 ≤ π^L ≤ π^U per flow, with equality for the last flow."""
        factors = pi_factors(bnpp_curves.bonds[-1], bnpp_curves.issuer, calibrated, TWO_MONTHS)
        for lower, upper in zip(factors.lower, factors.upper):
            assert 1.0 <= lower <= upper + 1e-12
        assert abs(factors.lower[-1] - factors.upper[-1]) < 1e-10

    def test_robustness_sweep(
        self, flat_issuer: Callable[..., IssuerCurve], ten_year_zero: BondSpec
    ) -> None:
        """Test single-flow bounds agree within 1e-6 per 100 face across the parameter grid."""
        issuer = flat_issuer(rate=0.01, zeta=0.01)
        grid = itertools.product(
            (1e-4, 0.01, 0.1, 0.2, 0.3), np.linspace(0.008, 0.04, 5), (0.0, 0.001, 0.002)
        )
        for a_hat, sigma_hat, gamma_hat in grid:
            p = HWParams(a_hat=a_hat, sigma_hat=sigma_hat, gamma_hat=gamma_hat)
            lower, upper = premium_bounds(ten_year_zero, issuer, p, TWO_MONTHS)
            assert abs(upper - lower) < 1e-6

    def test_non_decreasing_in_ttl(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test both bounds of every BNPP bond grow with the ttl up to two months."""
        ttls = [days / 365 for days in (1, 7, 14, 30, 45, 61)]
        for bond in bnpp_curves.bonds:
            bounds = [premium_bounds(bond, bnpp_curves.issuer, calibrated, ttl) for ttl in ttls]
            for (lower, upper), (next_lower, next_upper) in zip(bounds, bounds[1:]):
                assert next_lower >= lower
                assert next_upper >= upper

    def test_non_decreasing_in_volatility(
        self, bnpp_curves: Curves, calibrated: HWParams
    ) -> None:
        """Test both bounds grow with σ̂, from the default-only premium at σ̂ = 0."""
        bond = bnpp_curves.bonds[-1]
        bounds = [
            premium_bounds(
                bond,
                bnpp_curves.issuer,
                calibrated.model_copy(update={"sigma_hat": float(sigma_hat)}),
                TWO_MONTHS,
            )
            for sigma_hat in np.linspace(0.0, 0.04, 9)
        ]
        for (lower, upper), (next_lower, next_upper) in zip(bounds, bounds[1:]):
            assert next_lower >= lower
            assert next_upper >= upper

    def test_all_flows_within_ttl(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test a bond fully paid before the ttl has no premium to bound."""
        with pytest.raises(ModelDomainError, match="paid within the ttl"):
            premium_bounds(bnpp_curves.bonds[0], bnpp_curves.issuer, calibrated, 5.0)


class TestIlliquidPrice:
    """Test `illiquid_price`."""

    def test_zero_ttl_is_liquid(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test the illiquid price at a zero ttl is the liquid price."""
        bond, issuer = bnpp_curves.bonds[3], bnpp_curves.issuer
        assert illiquid_price(bond, issuer, calibrated, 0.0) == price_liquid_bond(bond, issuer)

    @pytest.mark.parametrize("ttl", [TWO_WEEKS, TWO_MONTHS])
    def test_liquid_minus_upper_bound(
        self, bnpp_curves: Curves, calibrated: HWParams, ttl: float
    ) -> None:
        """Test the illiquid price is the liquid price minus the upper bound for every bond."""
        issuer = bnpp_curves.issuer
        for bond in bnpp_curves.bonds:
            _, upper = premium_bounds(bond, issuer, calibrated, ttl)
            liquid = price_liquid_bond(bond, issuer)
            assert abs(illiquid_price(bond, issuer, calibrated, ttl) - (liquid - upper)) < 1e-12

    def test_single_flow(
        self,
        flat_issuer: Callable[..., IssuerCurve],
        ten_year_zero: BondSpec,
        calibrated: HWParams,
    ) -> None:
        """Test a zero-coupon bond is worth 100 B̄ (1 + P - π^U)."""
        issuer = flat_issuer(rate=0.01, zeta=0.005)
        t = issuer.time(ten_year_zero.maturity)
        bundle = vol_bundle(calibrated, TWO_MONTHS, [t])
        survival = survival_probability(calibrated, issuer, TWO_MONTHS)
        expected = (
            100.0
            * issuer.defaultable_discount_at(t)
            * (1.0 + survival - pi_upper(bundle.cumulated[0]))
        )
        assert illiquid_price(ten_year_zero, issuer, calibrated, TWO_MONTHS) == pytest.approx(
            expected, rel=1e-14
        )

    def test_degenerate_parameters(
        self, flat_issuer: Callable[..., IssuerCurve], ten_year_zero: BondSpec
    ) -> None:
        """Test an extreme volatility giving a negative price is flagged."""
        p = HWParams(a_hat=0.1, sigma_hat=1.0, gamma_hat=0.0)
        with pytest.raises(ModelDomainError, match="outside the model validity"):
            illiquid_price(ten_year_zero, flat_issuer(rate=0.01), p, 1.0)


class TestSheerSpread:
    """Test `sheer_spread`, `illiquid_discount` and `decompose_zc`."""

    def test_formula(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test L = -ln(1 + P - π^U) / t."""
        issuer = bnpp_curves.issuer
        bundle = vol_bundle(calibrated, TWO_MONTHS, [5.0])
        survival = survival_probability(calibrated, issuer, TWO_MONTHS)
        expected = -math.log(1.0 + survival - pi_upper(bundle.cumulated[0])) / 5.0
        assert sheer_spread(issuer, calibrated, TWO_MONTHS, 5.0) == pytest.approx(
            expected, rel=1e-14
        )

    def test_five_year_magnitude(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test the five year spread at a two month ttl is between 10 and 100 bp."""
        assert 0.001 < sheer_spread(bnpp_curves.issuer, calibrated, TWO_MONTHS, 5.0) < 0.01

    def test_zero_ttl(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test no ttl means no spread."""
        assert sheer_spread(bnpp_curves.issuer, calibrated, 0.0, 5.0) == 0.0

    def test_longer_ttl_is_wider(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test two months cost more than two weeks."""
        issuer = bnpp_curves.issuer
        assert sheer_spread(issuer, calibrated, TWO_MONTHS, 5.0) > sheer_spread(
            issuer, calibrated, TWO_WEEKS, 5.0
        )

    def test_maturity_before_ttl(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test the spread needs a maturity after the ttl."""
        with pytest.raises(ModelDomainError, match="must be after the ttl"):
            sheer_spread(bnpp_curves.issuer, calibrated, TWO_MONTHS, TWO_WEEKS)

    def test_undefined_spread(self, flat_issuer: Callable[..., IssuerCurve]) -> None:
        """Test a non-positive log argument is a domain error."""
        p = HWParams(a_hat=0.1, sigma_hat=1.0, gamma_hat=0.0)
        with pytest.raises(ModelDomainError, match="is not positive"):
            sheer_spread(flat_issuer(rate=0.01), p, 1.0, 10.0)

    @pytest.mark.parametrize("ttl", [TWO_WEEKS, TWO_MONTHS])
    def test_rebuilds_coupon_bond(
        self, bnpp_curves: Curves, calibrated: HWParams, ttl: float
    ) -> None:
        """Test discounting each retained flow at its sheer spread gives the illiquid price."""
        issuer = bnpp_curves.issuer
        for bond in bnpp_curves.bonds:
            stripped, retained = split_flows(bond, issuer, ttl)
            rebuilt = stripped + sum(
                flow.present_value
                * math.exp(-sheer_spread(issuer, calibrated, ttl, flow.time) * flow.time)
                for flow in retained
            )
            assert rebuilt == pytest.approx(
                illiquid_price(bond, issuer, calibrated, ttl), rel=1e-12
            )

    def test_decomposition(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test risk-free, credit and liquidity parts rebuild the illiquid discount."""
        issuer = bnpp_curves.issuer
        parts = decompose_zc(issuer, calibrated, TWO_MONTHS, 7.0)
        assert parts.zeta_spread == issuer.zeta_at(7.0)
        assert parts.illiquid_discount == pytest.approx(
            illiquid_discount(issuer, calibrated, TWO_MONTHS, 7.0), rel=1e-12
        )
        assert parts.sheer_spread > 0.0
