"""Calendar arithmetic: day counts, business days, annual schedules and tenors."""

from __future__ import annotations

import re
from datetime import date, timedelta
from enum import Enum

from dateutil.relativedelta import relativedelta

from liquidity_premium.errors import InputError

MarketDate = date
"""Calendar date used for every market quantity (value, settlement and payment dates)."""

_SATURDAY = 5
_TENOR_PATTERN = re.compile(r"^\s*(\d+)\s*([dwmy])\s*$", re.IGNORECASE)


class DayCount(Enum):
    """Day-count conventions used by the curves and bonds of this package."""

    ACT_365 = "Act/365"
    """Actual days over 365. Zeta spreads, curve times and ttl year fractions."""
    ACT_360 = "Act/360"
    """Actual days over 360. Accrual of EUR OIS fixed legs."""
    ACT_ACT = "Act/Act"
    """Actual days over actual days in the (annual) coupon period, ISMA rule."""


def _act_act(d1: date, d2: date, period_start: date | None, period_end: date | None) -> float:
    if period_start is not None and period_end is not None:
        return (d2 - d1).days / (period_end - period_start).days

    # Without a reference period, annual periods are rolled back from d2, like a coupon schedule
    # rolled back from maturity.
    whole_periods = 0
    end = d2
    start = d2 - relativedelta(years=1)
    while start >= d1:
        whole_periods += 1
        end = start
        start = end - relativedelta(years=1)
    return whole_periods + (end - d1).days / (end - start).days


def year_fraction(
    d1: date,
    d2: date,
    day_count: DayCount,
    *,
    period_start: date | None = None,
    period_end: date | None = None,
) -> float:
    """Compute the year fraction between two dates.

    Args:
        d1 (date): Start of the interval.
        d2 (date): End of the interval, not before `d1`.
        day_count (DayCount): Convention to apply.
        period_start (date | None): Start of the reference coupon period, only used by
            `DayCount.ACT_ACT`. Defaults to None.
        period_end (date | None): End of the reference coupon period, only used by
            `DayCount.ACT_ACT`. Defaults to None.

    Returns:
        float: The year fraction.

    Raises:
        InputError: If `d1` is after `d2`.
    """
    if d1 > d2:
        msg = f"Start date {d1} is after end date {d2}."
        raise InputError(msg)
    if day_count is DayCount.ACT_365:
        return (d2 - d1).days / 365.0
    if day_count is DayCount.ACT_360:
        return (d2 - d1).days / 360.0
    return _act_act(d1, d2, period_start, period_end)


def add_business_days(start: date, days: int) -> date:
    """Move `days` business days forward, skipping weekends only (no holiday calendar)."""
    current = start
    remaining = days
    while remaining > 0:
        current += timedelta(days=1)
        if current.weekday() < _SATURDAY:
            remaining -= 1
    return current


def annual_schedule(maturity: date, after: date) -> tuple[date, ...]:
    """Annual payment dates rolled back from `maturity`, keeping only those strictly after `after`.

    Args:
        maturity (date): Last payment date.
        after (date): Dates on or before this one are dropped (already paid).

    Returns:
        tuple[date, ...]: Payment dates in increasing order, ending with `maturity`.
    """
    dates: list[date] = []
    years_back = 0
    while (payment := maturity - relativedelta(years=years_back)) > after:
        dates.append(payment)
        years_back += 1
    return tuple(reversed(dates))


def advance(start: date, tenor: str) -> date:
    """Advance a date by a tenor written as `<n>d`, `<n>w`, `<n>m` or `<n>y`.

    Months and years are calendar advances clamped to the end of the month.

    Args:
        start (date): Date to advance.
        tenor (str): The tenor, e.g. `"2w"` or `"2m"`. Case insensitive.

    Returns:
        date: The advanced date.

    Raises:
        InputError: If the tenor does not follow the grammar.
    """
    match = _TENOR_PATTERN.match(tenor)
    if match is None:
        msg = f"Tenor {tenor!r} does not match `<n>d|w|m|y`."
        raise InputError(msg)
    count, unit = int(match.group(1)), match.group(2).lower()
    offsets = {
        "d": relativedelta(days=count),
        "w": relativedelta(weeks=count),
        "m": relativedelta(months=count),
        "y": relativedelta(years=count),
    }
    return start + offsets[unit]
