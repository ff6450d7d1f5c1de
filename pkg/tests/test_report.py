from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from pydantic import ValidationError

from liquidity_premium.engine import (
    LiquidityReport,
    build_report,
    flow_spread_rows,
    premium_bounds,
    report_row,
)

if TYPE_CHECKING:
    from liquidity_premium.hw_model import HWParams
    from liquidity_premium.pipeline import Curves

TWO_MONTHS = 61 / 365


class TestBuildReport:
    """Test `build_report` and its row forms."""

    @pytest.fixture
    def report(self, bnpp_curves: Curves, calibrated: HWParams) -> LiquidityReport:
        """Report of the ten-year BNPP bond at a two month ttl."""
        return build_report(bnpp_curves.bonds[-1], bnpp_curves.issuer, calibrated, "2m", TWO_MONTHS)

    def test_fields(
        self, report: LiquidityReport, bnpp_curves: Curves, calibrated: HWParams
    ) -> None:
        """Test the report carries the bounds and the illiquid price below the liquid one."""
        lower, upper = premium_bounds(
            bnpp_curves.bonds[-1], bnpp_curves.issuer, calibrated, TWO_MONTHS
        )
        assert (report.delta_lower, report.delta_upper) == (lower, upper)
        assert report.bond_id == "BNPP 2.375% 2024-05-20"
        assert report.illiquid_price < report.liquid_price
        assert report.yield_spread > 0.0
        assert 0.0 < report.bound_gap < 1e-6
        assert 0.999 < report.survival < 1.0

    def test_flow_spreads(self, report: LiquidityReport) -> None:
        """Test one positive spread per retained flow, in payment order."""
        assert len(report.flow_spreads) == 9
        assert report.flow_spreads[-1].payment_date == report.maturity
        assert all(flow.spread > 0.0 for flow in report.flow_spreads)

    def test_report_row(self, report: LiquidityReport) -> None:
        """Test the flat row converts units."""
        row = report_row(report)
        assert row["ttl"] == "2m"
        assert row["coupon_pct"] == pytest.approx(2.375)
        assert row["default_probability"] == pytest.approx(1.0 - report.survival)
        assert row["liquidity_yield_spread_bp"] == pytest.approx(report.yield_spread * 1e4)
        assert row["bound_gap_per_100"] == pytest.approx(report.bound_gap)

    def test_flow_spread_rows(self, report: LiquidityReport) -> None:
        """Test one row per flow keyed by bond and ttl."""
        rows = flow_spread_rows(report)
        assert len(rows) == len(report.flow_spreads)
        assert {row["bond_id"] for row in rows} == {report.bond_id}
        assert rows[0]["sheer_spread_bp"] == pytest.approx(report.flow_spreads[0].spread * 1e4)

    def test_zero_ttl(self, bnpp_curves: Curves, calibrated: HWParams) -> None:
        """Test a zero ttl gives the liquid bond back."""
        report = build_report(bnpp_curves.bonds[0], bnpp_curves.issuer, calibrated, "0d", 0.0)
        assert report.delta_lower == report.delta_upper == 0.0
        assert report.illiquid_price == report.liquid_price
        assert report.survival == 1.0
        assert all(flow.spread == 0.0 for flow in report.flow_spreads)

    def test_unordered_bounds(self, report: LiquidityReport) -> None:
        """Test a report with the lower bound above the upper bound is invalid."""
        fields = report.model_dump()
        fields["delta_lower"] = report.delta_upper + 1e-6
        with pytest.raises(ValidationError, match="is above the upper bound"):
            LiquidityReport(**fields)
