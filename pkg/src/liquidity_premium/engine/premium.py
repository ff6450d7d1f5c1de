"""Sheer liquidity premium, illiquid prices and sheer liquidity spreads.

A bond that can only be sold after the time-to-liquidate τ is worth, for every flow paid after τ,
the liquid value corrected by the default risk over the ttl and by the expected maximum of the
forward price over the ttl. Flows paid on or before τ are stripped and priced as liquid.
"""

from __future__ import annotations

import logging
import math

from pydantic import BaseModel, ConfigDict

from liquidity_premium.engine.factors import PiFactors, pi_lower, pi_upper
from liquidity_premium.errors import ModelDomainError
from liquidity_premium.hw_model import HWParams, survival_probability, vol_bundle
from liquidity_premium.termstructure.bonds import BondSpec
from liquidity_premium.termstructure.issuer import IssuerCurve, price_liquid_bond

logger = logging.getLogger(__name__)


class RetainedFlow(BaseModel):
    """A flow paid after the ttl, with its liquid present value."""

    model_config = ConfigDict(frozen=True)

    time: float
    """Payment time t_i, years from settlement."""
    amount: float
    """Flow c_i per bond face."""
    present_value: float
    """Liquid value c_i B̄(t0, t_i)."""


class ZcDecomposition(BaseModel):
    """Illiquid zero-coupon yield split into risk-free, credit and liquidity parts."""

    model_config = ConfigDict(frozen=True)

    maturity: float
    """Zero-coupon maturity, years from settlement."""
    zero_rate: float
    """Risk-free continuously compounded zero rate, -ln B(t0, T) / T."""
    zeta_spread: float
    """Issuer Zeta spread Z(T)."""
    sheer_spread: float
    """Sheer liquidity spread L_τ(T)."""

    @property
    def illiquid_discount(self) -> float:
        """B(t0, T) e^{-Z T} e^{-L T}."""
        return math.exp(-(self.zero_rate + self.zeta_spread + self.sheer_spread) * self.maturity)


def split_flows(
    bond: BondSpec, issuer: IssuerCurve, ttl: float
) -> tuple[float, tuple[RetainedFlow, ...]]:
    """Value of the stripped flows (t0 < t_i ≤ τ) and the flows retained after τ."""
    stripped = 0.0
    retained: list[RetainedFlow] = []
    for payment, amount in bond.cash_flows(issuer.anchor):
        t = issuer.time(payment)
        present_value = amount * issuer.defaultable_discount_at(t)
        if t <= ttl:
            stripped += present_value
        else:
            retained.append(RetainedFlow(time=t, amount=amount, present_value=present_value))
    return stripped, tuple(retained)


def _retained_or_raise(
    bond: BondSpec, issuer: IssuerCurve, ttl: float
) -> tuple[float, tuple[RetainedFlow, ...]]:
    stripped, retained = split_flows(bond, issuer, ttl)
    if not retained:
        msg = f"Every flow of {bond.bond_id} is paid within the ttl of {ttl:.6f} years."
        raise ModelDomainError(msg)
    return stripped, retained


def pi_factors(bond: BondSpec, issuer: IssuerCurve, p: HWParams, ttl: float) -> PiFactors:
    """π^U_i and π^L_i of the flows of `bond` paid after a positive ttl.

    Raises:
        ModelDomainError: If the ttl is not positive or no flow is paid after it.
    """
    _, retained = _retained_or_raise(bond, issuer, ttl)
    bundle = vol_bundle(p, ttl, [flow.time for flow in retained])
    last = bundle.cumulated[-1]
    return PiFactors(
        times=bundle.times,
        upper=tuple(pi_upper(cumulated) for cumulated in bundle.cumulated),
        lower=tuple(pi_lower(cumulated, last) for cumulated in bundle.cumulated),
    )


def premium_bounds(
    bond: BondSpec, issuer: IssuerCurve, p: HWParams, ttl: float
) -> tuple[float, float]:
    """Lower and upper bounds of the sheer liquidity premium Δ_τ, per `bond.face`.

    Δ = Σ_{t_i > τ} c_i B̄(t0, t_i) (π_i(τ) - P(t0, τ)) with π^L for the lower and π^U for the
    upper bound.

    Args:
        bond (BondSpec): The bond, alive at the curve anchor.
        issuer (IssuerCurve): Calibrated issuer curve.
        p (HWParams): Model parameters.
        ttl (float): Time-to-liquidate τ ≥ 0, years. Zero gives no premium.

    Returns:
        tuple[float, float]: `(lower, upper)`.

    Raises:
        ModelDomainError: If no flow is paid after the ttl.
    """
    if ttl == 0.0:
        return 0.0, 0.0
    _, retained = _retained_or_raise(bond, issuer, ttl)
    factors = pi_factors(bond, issuer, p, ttl)
    survival = survival_probability(p, issuer, ttl)
    lower = sum(
        flow.present_value * (factor - survival)
        for flow, factor in zip(retained, factors.lower)
    )
    upper = sum(
        flow.present_value * (factor - survival)
        for flow, factor in zip(retained, factors.upper)
    )
    logger.debug(f"{bond.bond_id} ttl {ttl:.6f}: premium in [{lower:.12f}, {upper:.12f}]")
    return lower, upper


def illiquid_price(bond: BondSpec, issuer: IssuerCurve, p: HWParams, ttl: float) -> float:
    """Invoice price of the bond when it can only be sold after the ttl.

    Σ_{t_i ≤ τ} c_i B̄(t0, t_i) + Σ_{t_i > τ} c_i B̄(t0, t_i) (1 + P(t0, τ) - π^U_i(τ)), which is
    the liquid price minus the upper premium bound.

    Raises:
        ModelDomainError: If no flow is paid after the ttl, or the price is not positive.
    """
    if ttl == 0.0:
        return price_liquid_bond(bond, issuer)
    stripped, retained = _retained_or_raise(bond, issuer, ttl)
    survival = survival_probability(p, issuer, ttl)
    bundle = vol_bundle(p, ttl, [flow.time for flow in retained])
    price = stripped + sum(
        flow.present_value * (1.0 + survival - pi_upper(cumulated))
        for flow, cumulated in zip(retained, bundle.cumulated)
    )
    if price <= 0.0:
        msg = (
            f"Illiquid price of {bond.bond_id} is {price:.6f} at ttl {ttl:.6f}: parameters are "
            "outside the model validity."
        )
        raise ModelDomainError(msg)
    return price


def _illiquid_factor(issuer: IssuerCurve, p: HWParams, ttl: float, maturity: float) -> float:
    if maturity <= ttl:
        msg = f"Zero-coupon maturity {maturity} must be after the ttl {ttl}."
        raise ModelDomainError(msg)
    if ttl == 0.0:
        return 1.0
    bundle = vol_bundle(p, ttl, [maturity])
    return 1.0 + survival_probability(p, issuer, ttl) - pi_upper(bundle.cumulated[0])


def sheer_spread(issuer: IssuerCurve, p: HWParams, ttl: float, maturity: float) -> float:
    """Sheer liquidity spread L_τ(t_i) = -ln(1 + P(t0, τ) - π^U_i(τ)) / t_i.

    Args:
        issuer (IssuerCurve): Calibrated issuer curve.
        p (HWParams): Model parameters.
        ttl (float): Time-to-liquidate τ ≥ 0, years.
        maturity (float): Flow payment time t_i > τ, years.

    Returns:
        float: The spread, continuously compounded per annum.

    Raises:
        ModelDomainError: If `maturity` is not after the ttl or the log argument is not positive.
    """
    factor = _illiquid_factor(issuer, p, ttl, maturity)
    if factor <= 0.0:
        msg = (
            f"Sheer spread at t = {maturity:.6f} undefined for ttl {ttl:.6f}: 1 + P - π^U = "
            f"{factor:.6e} is not positive."
        )
        raise ModelDomainError(msg)
    return -math.log(factor) / maturity


def illiquid_discount(issuer: IssuerCurve, p: HWParams, ttl: float, maturity: float) -> float:
    """Illiquid defaultable zero-coupon price B̄(t0, T) (1 + P(t0, τ) - π^U(τ))."""
    return issuer.defaultable_discount_at(maturity) * _illiquid_factor(issuer, p, ttl, maturity)


def decompose_zc(
    issuer: IssuerCurve, p: HWParams, ttl: float, maturity: float
) -> ZcDecomposition:
    """Split the illiquid zero-coupon yield at `maturity` into its three components."""
    return ZcDecomposition(
        maturity=maturity,
        zero_rate=-math.log(issuer.discount.discount_at(maturity)) / maturity,
        zeta_spread=issuer.zeta_at(maturity),
        sheer_spread=sheer_spread(issuer, p, ttl, maturity),
    )


def forward_weights(bond: BondSpec, issuer: IssuerCurve, ttl: float) -> tuple[float, ...]:
    """Weights c_i B̄(t0, t_i) / B̄(t0, τ) of the retained flows in the forward coupon bond."""
    _, retained = _retained_or_raise(bond, issuer, ttl)
    at_ttl = issuer.defaultable_discount_at(ttl)
    return tuple(flow.present_value / at_ttl for flow in retained)


def forward_coupon_bond(bond: BondSpec, issuer: IssuerCurve, ttl: float) -> float:
    """Forward defaultable coupon bond at t0 for delivery at τ, Σ_{t_i > τ} c_i B̄_i / B̄(t0, τ)."""
    return sum(forward_weights(bond, issuer, ttl))
