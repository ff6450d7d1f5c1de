"""Fixed-rate bullet bonds with annual coupons."""

from __future__ import annotations

from datetime import date

from dateutil.relativedelta import relativedelta
from pydantic import (
    BaseModel,
    ConfigDict,
    NonNegativeFloat,
    PositiveFloat,
    field_validator,
    model_validator,
)

from liquidity_premium.errors import InputError
from liquidity_premium.termstructure.dates import DayCount, annual_schedule, year_fraction


class BondSpec(BaseModel):
    """Contract terms of one fixed-rate bullet bond (not callable, puttable or convertible)."""

    model_config = ConfigDict(frozen=True)

    issuer: str
    """Issuer identifier, e.g. `"BNPP"`."""
    maturity: date
    """Final payment date, where the face value is repaid with the last coupon."""
    coupon: NonNegativeFloat
    """Coupon rate, decimal per annum (e.g. `0.02875`)."""
    payment_dates: tuple[date, ...]
    """Annual payment dates, strictly increasing, the last one equal to `maturity`."""
    face: PositiveFloat = 100.0
    """Face value; prices and premia are quoted per this face."""
    clean_price: PositiveFloat | None = None
    """Quoted clean price per `face`, present for calibration instruments."""
    day_count: DayCount = DayCount.ACT_ACT
    """Coupon accrual convention."""

    @field_validator("payment_dates")
    @classmethod
    def _check_increasing(cls, payment_dates: tuple[date, ...]) -> tuple[date, ...]:
        if not payment_dates:
            msg = "A bond needs at least one payment date."
            raise ValueError(msg)
        if any(later <= earlier for earlier, later in zip(payment_dates, payment_dates[1:])):
            msg = "Payment dates must be strictly increasing."
            raise ValueError(msg)
        return payment_dates

    @model_validator(mode="after")
    def _check_maturity(self) -> BondSpec:
        if self.payment_dates[-1] != self.maturity:
            msg = (
                f"Last payment date {self.payment_dates[-1]} differs from maturity "
                f"{self.maturity}."
            )
            raise ValueError(msg)
        return self

    @classmethod
    def annual(
        cls,
        issuer: str,
        maturity: date,
        coupon: float,
        *,
        settle: date,
        clean_price: float | None = None,
    ) -> BondSpec:
        """Build a bond whose annual schedule is rolled back from maturity up to `settle`.

        Args:
            issuer (str): Issuer identifier.
            maturity (date): Final payment date.
            coupon (float): Coupon rate, decimal per annum.
            settle (date): Payments on or before this date are not part of the schedule.
            clean_price (float | None): Quoted clean price per 100 face. Defaults to None.

        Returns:
            BondSpec: The bond.

        Raises:
            InputError: If the bond has matured by `settle`.
        """
        payment_dates = annual_schedule(maturity, after=settle)
        if not payment_dates:
            msg = f"{issuer} bond maturing {maturity} has matured by {settle}."
            raise InputError(msg)
        return cls(
            issuer=issuer,
            maturity=maturity,
            coupon=coupon,
            payment_dates=payment_dates,
            clean_price=clean_price,
        )

    @property
    def bond_id(self) -> str:
        """Human readable identifier, e.g. `"BNPP 2.375% 2024-05-20"`."""
        return f"{self.issuer} {self.coupon * 100:.3f}% {self.maturity.isoformat()}"

    def period_start(self, payment: date) -> date:
        """Start of the coupon period that ends on `payment`."""
        index = self.payment_dates.index(payment)
        if index > 0:
            return self.payment_dates[index - 1]
        return payment - relativedelta(years=1)

    def coupon_amount(self, payment: date) -> float:
        """Coupon paid on `payment`, per `face`, using the bond day count."""
        accrual = year_fraction(
            self.period_start(payment),
            payment,
            self.day_count,
            period_start=self.period_start(payment),
            period_end=payment,
        )
        return self.coupon * self.face * accrual

    def cash_flows(self, settle: date) -> tuple[tuple[date, float], ...]:
        """Flows (date, amount) paid strictly after `settle`; the last one includes the face.

        Raises:
            InputError: If the bond has matured by `settle`.
        """
        if settle >= self.maturity:
            msg = f"{self.bond_id} has matured by {settle}."
            raise InputError(msg)
        flows = [(payment, self.coupon_amount(payment)) for payment in self.payment_dates]
        flows[-1] = (self.maturity, flows[-1][1] + self.face)
        return tuple((payment, amount) for payment, amount in flows if payment > settle)


def accrued_interest(bond: BondSpec, settle: date) -> float:
    """Coupon accrued from the start of the current period to `settle`, per `bond.face`.

    Args:
        bond (BondSpec): The bond.
        settle (date): Settlement date.

    Returns:
        float: The accrued interest.

    Raises:
        InputError: If `settle` is on or after maturity, or before the first known period.
    """
    if settle >= bond.maturity:
        msg = f"{bond.bond_id} has matured by {settle}: no accrued interest."
        raise InputError(msg)
    next_payment = next(payment for payment in bond.payment_dates if payment > settle)
    start = bond.period_start(next_payment)
    if settle < start:
        msg = f"{settle} precedes the first coupon period of {bond.bond_id} starting {start}."
        raise InputError(msg)
    accrual = year_fraction(
        start, settle, bond.day_count, period_start=start, period_end=next_payment
    )
    return bond.coupon * bond.face * accrual


def invoice_price(bond: BondSpec, settle: date) -> float:
    """Invoice (dirty) price: quoted clean price plus accrued interest.

    Raises:
        InputError: If the bond has no clean price.
    """
    if bond.clean_price is None:
        msg = f"{bond.bond_id} has no clean price."
        raise InputError(msg)
    return bond.clean_price + accrued_interest(bond, settle)
