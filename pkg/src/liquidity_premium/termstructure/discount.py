"""Risk-free discount curve bootstrapped from OIS quotes."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from datetime import date

import numpy as np
from pydantic import BaseModel, ConfigDict, FiniteFloat, field_validator, model_validator
from scipy.optimize import brentq

from liquidity_premium.errors import CalibrationError, InputError
from liquidity_premium.termstructure.dates import (
    DayCount,
    advance,
    annual_schedule,
    year_fraction,
)

logger = logging.getLogger(__name__)

_LOG_DISCOUNT_BRACKET = (-2.0, 2.0)
_ROOT_TOLERANCE = 1e-15


class OisQuote(BaseModel):
    """A quoted OIS rate for one tenor end date."""

    model_config = ConfigDict(frozen=True)

    maturity: date
    """End date of the swap."""
    rate: FiniteFloat
    """Quoted rate, decimal per annum (e.g. `-0.0013` for -0.13%)."""


class DiscountCurve(BaseModel):
    """Risk-free discount factors B(t0, T) with log-linear interpolation.

    Times are Act/365 year fractions from `anchor`. Between knots ln B is linear in time; beyond
    the last knot the last forward rate is extended (flat forward). B(t0, t0) = 1 is implied and
    not stored in `knots`.
    """

    model_config = ConfigDict(frozen=True)

    anchor: date
    """Curve date t0 (settlement)."""
    knots: tuple[tuple[date, float], ...]
    """Pairs (T, B(t0, T)), strictly increasing in T, all after `anchor`."""

    @field_validator("knots")
    @classmethod
    def _check_discount_factors(
        cls, knots: tuple[tuple[date, float], ...]
    ) -> tuple[tuple[date, float], ...]:
        for knot_date, discount in knots:
            if not (math.isfinite(discount) and discount > 0.0):
                msg = f"Discount factor at {knot_date} must be finite and positive, got {discount}."
                raise ValueError(msg)
        dates = [knot_date for knot_date, _ in knots]
        if any(later <= earlier for earlier, later in zip(dates, dates[1:])):
            msg = "Discount curve knots must be strictly increasing in date."
            raise ValueError(msg)
        return knots

    @model_validator(mode="after")
    def _check_anchor(self) -> DiscountCurve:
        if self.knots and self.knots[0][0] <= self.anchor:
            msg = f"First knot {self.knots[0][0]} must be after the anchor {self.anchor}."
            raise ValueError(msg)
        return self

    def time(self, when: date) -> float:
        """Act/365 year fraction from the anchor to `when`."""
        return year_fraction(self.anchor, when, DayCount.ACT_365)

    def _grid(self) -> tuple[np.ndarray, np.ndarray]:
        times = np.array([0.0, *(self.time(knot_date) for knot_date, _ in self.knots)])
        log_discounts = np.array([0.0, *(math.log(discount) for _, discount in self.knots)])
        return times, log_discounts

    def discount_at(self, t: float) -> float:
        """Discount factor at `t` years (Act/365) after the anchor."""
        if t < 0.0:
            msg = f"Cannot discount at negative time {t}."
            raise InputError(msg)
        times, log_discounts = self._grid()
        if len(times) == 1:
            return 1.0
        if t <= times[-1]:
            return math.exp(float(np.interp(t, times, log_discounts)))
        last_forward = (log_discounts[-2] - log_discounts[-1]) / (times[-1] - times[-2])
        return math.exp(log_discounts[-1] - last_forward * (t - times[-1]))

    def discount(self, when: date) -> float:
        """Discount factor B(t0, `when`)."""
        return self.discount_at(self.time(when))

    def zero_rate(self, when: date) -> float:
        """Continuously compounded Act/365 zero rate up to `when` (0 at the anchor)."""
        t = self.time(when)
        if t == 0.0:
            return 0.0
        return -math.log(self.discount_at(t)) / t

    def forward_rate(self, start: date, end: date) -> float:
        """Continuously compounded Act/365 forward rate between two dates."""
        t1, t2 = self.time(start), self.time(end)
        if t2 <= t1:
            msg = f"Forward period end {end} must be after its start {start}."
            raise InputError(msg)
        return math.log(self.discount_at(t1) / self.discount_at(t2)) / (t2 - t1)

    @property
    def has_negative_forwards(self) -> bool:
        """Whether any knot-to-knot forward rate is negative (discounts increase somewhere)."""
        _, log_discounts = self._grid()
        return bool(np.any(np.diff(log_discounts) > 0.0))


def _fixed_leg(quote: OisQuote, t0: date) -> tuple[tuple[date, date], ...]:
    payments = annual_schedule(quote.maturity, after=t0)
    starts = (t0, *payments[:-1])
    return tuple(zip(starts, payments))


def _is_money_market(quote: OisQuote, t0: date) -> bool:
    return quote.maturity <= advance(t0, "1y")


def par_residual(
    quote: OisQuote,
    curve: DiscountCurve,
    day_count: DayCount = DayCount.ACT_360,
) -> float:
    """Value of the fixed leg plus final discount minus one, per unit notional.

    Zero means the curve reprices the quote at par. Quotes up to one year are single period
    simple rates; longer ones are swaps with annual fixed legs.

    Args:
        quote (OisQuote): The quote to reprice.
        curve (DiscountCurve): Curve used to discount.
        day_count (DayCount): Fixed-leg accrual convention. Defaults to `DayCount.ACT_360`.

    Returns:
        float: The par residual.
    """
    t0 = curve.anchor
    if _is_money_market(quote, t0):
        accrual = year_fraction(t0, quote.maturity, day_count)
        return curve.discount(quote.maturity) * (1.0 + quote.rate * accrual) - 1.0
    annuity = sum(
        year_fraction(start, end, day_count) * curve.discount(end)
        for start, end in _fixed_leg(quote, t0)
    )
    return quote.rate * annuity + curve.discount(quote.maturity) - 1.0


def bootstrap_discount(
    quotes: Sequence[OisQuote],
    t0: date,
    day_count: DayCount = DayCount.ACT_360,
) -> DiscountCurve:
    """Bootstrap B(t0, T) so that every quote reprices at par.

    Args:
        quotes (Sequence[OisQuote]): Quotes sorted by strictly increasing maturity.
        t0 (date): Curve anchor (settlement date).
        day_count (DayCount): Fixed-leg accrual convention. Defaults to `DayCount.ACT_360`.

    Returns:
        DiscountCurve: Curve with one knot per quote.

    Raises:
        InputError: If there are no quotes, or they are unsorted, duplicated or not after `t0`.
        CalibrationError: If a swap quote cannot be repriced within the search bracket.
    """
    if not quotes:
        msg = "At least one OIS quote is needed to bootstrap a discount curve."
        raise InputError(msg)
    maturities = [quote.maturity for quote in quotes]
    if any(later <= earlier for earlier, later in zip(maturities, maturities[1:])):
        msg = "OIS quotes must have strictly increasing, non-duplicated maturities."
        raise InputError(msg)
    if maturities[0] <= t0:
        msg = f"OIS quote maturing {maturities[0]} is not after the curve date {t0}."
        raise InputError(msg)

    knots: list[tuple[date, float]] = []
    for quote in quotes:
        if _is_money_market(quote, t0):
            accrual = year_fraction(t0, quote.maturity, day_count)
            discount = 1.0 / (1.0 + quote.rate * accrual)
        else:

            def residual(log_discount: float, quote: OisQuote = quote) -> float:
                trial = DiscountCurve(
                    anchor=t0, knots=(*knots, (quote.maturity, math.exp(log_discount)))
                )
                return par_residual(quote, trial, day_count)

            low, high = _LOG_DISCOUNT_BRACKET
            if residual(low) * residual(high) > 0.0:
                msg = f"Cannot bracket the discount factor of the OIS maturing {quote.maturity}."
                raise CalibrationError(msg)
            discount = math.exp(brentq(residual, low, high, xtol=_ROOT_TOLERANCE))
        knots.append((quote.maturity, discount))
        logger.debug(f"OIS knot {quote.maturity}: rate {quote.rate:.6%}, discount {discount:.12f}")

    curve = DiscountCurve(anchor=t0, knots=tuple(knots))
    if curve.has_negative_forwards:
        logger.warning("Bootstrapped discount curve has negative forward rates.")
    return curve
