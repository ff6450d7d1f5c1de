"""Continuously compounded bond yields and the liquidity yield spread."""

from __future__ import annotations

import math
from collections.abc import Sequence

from scipy.optimize import brentq

from liquidity_premium.engine.premium import illiquid_price
from liquidity_premium.errors import ModelDomainError
from liquidity_premium.hw_model import HWParams
from liquidity_premium.termstructure.bonds import BondSpec
from liquidity_premium.termstructure.issuer import IssuerCurve, price_liquid_bond

YIELD_BRACKET = (-0.5, 2.0)
"""Search interval for a yield, decimal per annum."""
_ROOT_TOLERANCE = 1e-15


def yield_from_flows(price: float, flows: Sequence[tuple[float, float]]) -> float:
    """The y solving price = Σ c_i e^{-y t_i} for flows given as (t_i, c_i).

    Raises:
        ModelDomainError: If the price is not positive or no yield in `YIELD_BRACKET` reprices it.
    """
    if price <= 0.0:
        msg = f"A yield needs a positive price, got {price}."
        raise ModelDomainError(msg)

    def residual(y: float) -> float:
        return sum(amount * math.exp(-y * t) for t, amount in flows) - price

    low, high = YIELD_BRACKET
    if residual(low) * residual(high) > 0.0:
        msg = f"No yield in [{low:.0%}, {high:.0%}] reprices {price:.6f}."
        raise ModelDomainError(msg)
    return brentq(residual, low, high, xtol=_ROOT_TOLERANCE)


def bond_yield(price: float, bond: BondSpec, issuer: IssuerCurve) -> float:
    """Continuously compounded yield of `bond` at invoice `price`, times measured on `issuer`.

    Args:
        price (float): Invoice price per `bond.face`.
        bond (BondSpec): The bond.
        issuer (IssuerCurve): Curve whose anchor is the settlement date.

    Returns:
        float: The yield, decimal per annum.
    """
    flows = [(issuer.time(payment), amount) for payment, amount in bond.cash_flows(issuer.anchor)]
    return yield_from_flows(price, flows)


def liquidity_yield_spread(
    bond: BondSpec, issuer: IssuerCurve, p: HWParams, ttl: float
) -> float:
    """Yield of the illiquid price minus yield of the liquid price, per annum."""
    liquid = bond_yield(price_liquid_bond(bond, issuer), bond, issuer)
    return bond_yield(illiquid_price(bond, issuer, p, ttl), bond, issuer) - liquid
