"""Per (bond, ttl) liquidity report and its flat row form."""

from __future__ import annotations

import logging
from datetime import date
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from liquidity_premium.engine.premium import (
    illiquid_price,
    premium_bounds,
    sheer_spread,
    split_flows,
)
from liquidity_premium.engine.yields import bond_yield
from liquidity_premium.hw_model import HWParams, survival_probability
from liquidity_premium.termstructure.bonds import BondSpec
from liquidity_premium.termstructure.issuer import IssuerCurve, price_liquid_bond

logger = logging.getLogger(__name__)

_ORDER_TOLERANCE = 1e-9


class FlowSpread(BaseModel):
    """Sheer liquidity spread of one flow paid after the ttl."""

    model_config = ConfigDict(frozen=True)

    payment_date: date
    time: float
    """Payment time, years from settlement."""
    spread: float
    """L_τ(t_i), decimal per annum."""


class LiquidityReport(BaseModel):
    """Liquidity premium, prices, yields and spreads of one bond for one ttl.

    Monetary amounts are per `face`.
    """

    model_config = ConfigDict(frozen=True)

    bond_id: str
    issuer: str
    maturity: date
    coupon: float
    """Coupon rate, decimal per annum."""
    face: float
    ttl_label: str
    """The ttl as configured, e.g. `"2m"`."""
    ttl: float
    """Time-to-liquidate, years."""
    survival: float
    """Issuer survival probability P(t0, τ)."""
    delta_lower: float
    delta_upper: float
    liquid_price: float
    """Liquid invoice price."""
    illiquid_price: float
    """Illiquid invoice price, `liquid_price - delta_upper`."""
    liquid_yield: float
    illiquid_yield: float
    flow_spreads: tuple[FlowSpread, ...]

    @model_validator(mode="after")
    def _check_bounds_order(self) -> LiquidityReport:
        if self.delta_lower > self.delta_upper + _ORDER_TOLERANCE:
            msg = (
                f"{self.bond_id}: lower premium bound {self.delta_lower} is above the upper bound "
                f"{self.delta_upper}."
            )
            raise ValueError(msg)
        return self

    @property
    def bound_gap(self) -> float:
        """Δ_upper - Δ_lower."""
        return self.delta_upper - self.delta_lower

    @property
    def yield_spread(self) -> float:
        """Liquidity yield spread 𝓛_τ(T)."""
        return self.illiquid_yield - self.liquid_yield


def build_report(
    bond: BondSpec,
    issuer: IssuerCurve,
    p: HWParams,
    ttl_label: str,
    ttl: float,
) -> LiquidityReport:
    """Price one bond for one ttl.

    Args:
        bond (BondSpec): The bond.
        issuer (IssuerCurve): Calibrated curve of the bond issuer.
        p (HWParams): Model parameters.
        ttl_label (str): The ttl as configured.
        ttl (float): The ttl in years.

    Returns:
        LiquidityReport: The report.
    """
    lower, upper = premium_bounds(bond, issuer, p, ttl)
    liquid = price_liquid_bond(bond, issuer)
    illiquid = illiquid_price(bond, issuer, p, ttl)
    _, retained = split_flows(bond, issuer, ttl)
    flow_spreads = tuple(
        FlowSpread(
            payment_date=payment,
            time=flow.time,
            spread=sheer_spread(issuer, p, ttl, flow.time),
        )
        for flow, payment in zip(retained, bond.payment_dates[-len(retained) :])
    )
    report = LiquidityReport(
        bond_id=bond.bond_id,
        issuer=bond.issuer,
        maturity=bond.maturity,
        coupon=bond.coupon,
        face=bond.face,
        ttl_label=ttl_label,
        ttl=ttl,
        survival=survival_probability(p, issuer, ttl),
        delta_lower=lower,
        delta_upper=upper,
        liquid_price=liquid,
        illiquid_price=illiquid,
        liquid_yield=bond_yield(liquid, bond, issuer),
        illiquid_yield=bond_yield(illiquid, bond, issuer),
        flow_spreads=flow_spreads,
    )
    logger.debug(f"Report {report.bond_id} @ {ttl_label}: gap {report.bound_gap:.3e}")
    return report


def report_row(report: LiquidityReport) -> dict[str, Any]:
    """Flat row of a report; each column name carries its unit."""
    per_100 = 100.0 / report.face
    return {
        "bond_id": report.bond_id,
        "issuer": report.issuer,
        "maturity": report.maturity,
        "coupon_pct": report.coupon * 100.0,
        "ttl": report.ttl_label,
        "ttl_years": report.ttl,
        "survival_probability": report.survival,
        "default_probability": 1.0 - report.survival,
        "delta_lower_per_100": report.delta_lower * per_100,
        "delta_upper_per_100": report.delta_upper * per_100,
        "bound_gap_per_100": report.bound_gap * per_100,
        "liquid_price_per_100": report.liquid_price * per_100,
        "illiquid_price_per_100": report.illiquid_price * per_100,
        "liquid_yield_pct": report.liquid_yield * 100.0,
        "illiquid_yield_pct": report.illiquid_yield * 100.0,
        "liquidity_yield_spread_bp": report.yield_spread * 1e4,
    }


def flow_spread_rows(report: LiquidityReport) -> list[dict[str, Any]]:
    """One row per retained flow of a report."""
    return [
        {
            "bond_id": report.bond_id,
            "ttl": report.ttl_label,
            "payment_date": flow.payment_date,
            "time_years": flow.time,
            "sheer_spread_bp": flow.spread * 1e4,
        }
        for flow in report.flow_spreads
    ]
