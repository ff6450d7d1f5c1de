"""Issuer Zeta-spread curve bootstrapped from liquid bond prices."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from datetime import date

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy.optimize import brentq

from liquidity_premium.errors import CalibrationError, InputError
from liquidity_premium.termstructure.bonds import BondSpec, invoice_price
from liquidity_premium.termstructure.dates import DayCount, year_fraction
from liquidity_premium.termstructure.discount import DiscountCurve

logger = logging.getLogger(__name__)

ZETA_BRACKET = (-0.10, 1.00)
"""Search interval for a Zeta-spread knot, decimal per annum."""
_ROOT_TOLERANCE = 1e-15


class IssuerCurve(BaseModel):
    """Zeta-spread term structure Z(T) of one issuer over a risk-free discount curve.

    Z is constant up to the first knot, linear in Act/365 time between knots and flat after the
    last one, so it is continuous everywhere. Defaultable discounts are
    B̄(t0, T) = B(t0, T) exp(-Z(T) (T - t0)).
    """

    model_config = ConfigDict(frozen=True)

    anchor: date
    """Curve date t0 (settlement), equal to the discount curve anchor."""
    knots: tuple[tuple[date, float], ...]
    """Pairs (T_k, Z(T_k)) at the calibration bond maturities, strictly increasing in T_k."""
    discount: DiscountCurve
    """Risk-free curve B(t0, T)."""
    issuer: str = ""
    """Issuer identifier, informative only."""

    @field_validator("knots")
    @classmethod
    def _check_knots(
        cls, knots: tuple[tuple[date, float], ...]
    ) -> tuple[tuple[date, float], ...]:
        if not knots:
            msg = "An issuer curve needs at least one Zeta-spread knot."
            raise ValueError(msg)
        if not all(math.isfinite(spread) for _, spread in knots):
            msg = "Zeta spreads must be finite."
            raise ValueError(msg)
        dates = [knot_date for knot_date, _ in knots]
        if any(later <= earlier for earlier, later in zip(dates, dates[1:])):
            msg = "Zeta-spread knots must be strictly increasing in date."
            raise ValueError(msg)
        return knots

    @model_validator(mode="after")
    def _check_anchor(self) -> IssuerCurve:
        if self.discount.anchor != self.anchor:
            msg = f"Discount curve anchor {self.discount.anchor} differs from {self.anchor}."
            raise ValueError(msg)
        return self

    def time(self, when: date) -> float:
        """Act/365 year fraction from the anchor to `when`."""
        return year_fraction(self.anchor, when, DayCount.ACT_365)

    def zeta_at(self, t: float) -> float:
        """Zeta spread Z at `t` years after the anchor."""
        times = [self.time(knot_date) for knot_date, _ in self.knots]
        spreads = [spread for _, spread in self.knots]
        return float(np.interp(t, times, spreads))

    def zeta(self, when: date) -> float:
        """Zeta spread Z(`when`)."""
        return self.zeta_at(self.time(when))

    def defaultable_discount_at(self, t: float) -> float:
        """Defaultable discount B̄(t0, t0 + t) for `t` years after the anchor."""
        return self.discount.discount_at(t) * math.exp(-self.zeta_at(t) * t)


def defaultable_discount(curve: IssuerCurve, when: date) -> float:
    """Zero-recovery defaultable discount factor B̄(t0, `when`).

    Raises:
        InputError: If `when` is before the curve anchor.
    """
    return curve.defaultable_discount_at(curve.time(when))


def price_liquid_bond(bond: BondSpec, curve: IssuerCurve) -> float:
    """Invoice price of a liquid bond, Σ c_i B̄(t0, t_i) over the flows after the anchor."""
    return sum(
        amount * defaultable_discount(curve, payment)
        for payment, amount in bond.cash_flows(curve.anchor)
    )


def bootstrap_zeta(
    bonds: Sequence[BondSpec],
    discount: DiscountCurve,
    t0: date,
) -> IssuerCurve:
    """Solve one Zeta-spread knot per bond, in maturity order, to reprice invoice prices.

    Args:
        bonds (Sequence[BondSpec]): Priced bonds of one issuer, sorted by strictly increasing
            maturity.
        discount (DiscountCurve): Risk-free curve anchored at `t0`.
        t0 (date): Settlement date.

    Returns:
        IssuerCurve: Curve with a knot at each bond maturity.

    Raises:
        InputError: If there are no bonds, a bond has no price, or maturities are not strictly
            increasing.
        CalibrationError: If a bond cannot be repriced within `ZETA_BRACKET`.
    """
    if not bonds:
        msg = "At least one priced bond is needed to bootstrap a Zeta-spread curve."
        raise InputError(msg)
    maturities = [bond.maturity for bond in bonds]
    if any(later <= earlier for earlier, later in zip(maturities, maturities[1:])):
        msg = "Calibration bonds must have strictly increasing, non-duplicated maturities."
        raise InputError(msg)
    issuer = bonds[0].issuer

    knots: list[tuple[date, float]] = []
    for bond in bonds:
        target = invoice_price(bond, t0)

        def residual(spread: float, bond: BondSpec = bond, target: float = target) -> float:
            trial = IssuerCurve(
                anchor=t0,
                knots=(*knots, (bond.maturity, spread)),
                discount=discount,
                issuer=issuer,
            )
            return price_liquid_bond(bond, trial) - target

        low, high = ZETA_BRACKET
        if residual(low) * residual(high) > 0.0:
            msg = (
                f"Cannot reprice {bond.bond_id} at invoice price {target:.6f} with a Zeta spread "
                f"in [{low:.2%}, {high:.2%}]."
            )
            raise CalibrationError(msg)
        spread = brentq(residual, low, high, xtol=_ROOT_TOLERANCE)
        knots.append((bond.maturity, spread))
        logger.debug(f"Zeta knot {bond.bond_id}: {spread:.6%}")

    return IssuerCurve(anchor=t0, knots=tuple(knots), discount=discount, issuer=issuer)


def repricing_residuals(
    bonds: Sequence[BondSpec], curve: IssuerCurve
) -> tuple[tuple[str, float], ...]:
    """Model minus invoice price for each calibration bond, per 100 face."""
    return tuple(
        (bond.bond_id, price_liquid_bond(bond, curve) - invoice_price(bond, curve.anchor))
        for bond in bonds
    )
