"""Market data ingestion and the four commands: bootstrap, price, verify and figures."""

from __future__ import annotations

import logging
import math
from datetime import date
from typing import TYPE_CHECKING

import pandas as pd
from pydantic import BaseModel, ConfigDict

from liquidity_premium.emitters import JsonEmitter, Table, emitter_for
from liquidity_premium.engine.report import (
    LiquidityReport,
    build_report,
    flow_spread_rows,
    report_row,
)
from liquidity_premium.errors import InputError, LiquidityPremiumError
from liquidity_premium.oracle.verification import VerificationReport, verify_bonds
from liquidity_premium.provenance import Provenance, build_provenance
from liquidity_premium.termstructure.bonds import BondSpec, invoice_price
from liquidity_premium.termstructure.dates import advance
from liquidity_premium.termstructure.discount import (
    DiscountCurve,
    OisQuote,
    bootstrap_discount,
    par_residual,
)
from liquidity_premium.termstructure.issuer import (
    IssuerCurve,
    bootstrap_zeta,
    repricing_residuals,
)

if TYPE_CHECKING:
    from pathlib import Path

    from liquidity_premium.configuration import RunConfig

logger = logging.getLogger(__name__)

OIS_COLUMNS = ("date", "rate")
OIS_TENOR_COLUMNS = ("tenor", "rate_pct")
"""Alternative OIS layout: tenors counted from settlement, rates in percent."""
BOND_COLUMNS = ("issuer", "maturity", "coupon_pct", "clean_price")


def _read_csv(path: Path, *layouts: tuple[str, ...]) -> tuple[pd.DataFrame, tuple[str, ...]]:
    """Read `path` and return it with the first of `layouts` whose columns it has."""
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True, keep_default_na=False)
    except (OSError, pd.errors.ParserError) as error:
        msg = f"Cannot read {path}: {error}"
        raise InputError(msg) from error
    except pd.errors.EmptyDataError as ede:
        msg = f"{path} is empty."
        raise InputError(msg) from ede
    layout = next(
        (columns for columns in layouts if all(column in frame.columns for column in columns)),
        None,
    )
    if layout is None:
        missing = [column for column in layouts[0] if column not in frame.columns]
        expected = " or ".join(str(list(columns)) for columns in layouts)
        msg = f"{path} lacks the columns {missing}; expected {expected}."
        raise InputError(msg)
    if frame.empty:
        msg = f"{path} has a header but no rows."
        raise InputError(msg)
    return frame, layout


def _iso_date(raw: str, what: str) -> date:
    try:
        return date.fromisoformat(raw.strip())
    except ValueError as ve:
        msg = f"{what} {raw!r} is not an ISO date."
        raise InputError(msg) from ve


def _number(raw: str, what: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError) as error:
        msg = f"{what} is not a number: {raw!r}."
        raise InputError(msg) from error
    if not math.isfinite(value):
        msg = f"{what} is not finite: {raw!r}."
        raise InputError(msg)
    return value


def load_ois(path: Path, settlement: date) -> tuple[OisQuote, ...]:
    """Read OIS quotes as `date,rate`: ISO maturity dates and decimal rates.

    A `tenor,rate_pct` file is also accepted, its tenors counted from `settlement` and its rates
    in percent.

    Raises:
        InputError: If the file is missing, empty or malformed.
    """
    frame, layout = _read_csv(path, OIS_COLUMNS, OIS_TENOR_COLUMNS)
    if layout == OIS_COLUMNS:
        rows: list[OisQuote] = []
        for row in frame.itertuples(index=False):
            maturity = _iso_date(row.date, "OIS maturity")
            rate = _number(row.rate, f"OIS rate at {maturity}")
            rows.append(OisQuote(maturity=maturity, rate=rate))
        quotes = tuple(rows)
    else:
        quotes = tuple(
            OisQuote(
                maturity=advance(settlement, row.tenor),
                rate=_number(row.rate_pct, f"OIS rate of tenor {row.tenor}") / 100.0,
            )
            for row in frame.itertuples(index=False)
        )
    logger.info(f"Loaded {len(quotes)} OIS quotes from {path}")
    return quotes


def load_bonds(path: Path, settlement: date) -> tuple[BondSpec, ...]:
    """Read one issuer's bonds, sorted by maturity, coupons in percent, clean prices per 100.

    Raises:
        InputError: If the file is missing, empty or malformed, bonds of several issuers are mixed,
            or a bond has matured by `settlement`.
    """
    frame, _ = _read_csv(path, BOND_COLUMNS)
    issuers = set(frame["issuer"].str.strip())
    if len(issuers) != 1:
        msg = f"{path} mixes issuers {sorted(issuers)}; use one file per issuer."
        raise InputError(msg)

    bonds: list[BondSpec] = []
    for row in frame.itertuples(index=False):
        maturity = _iso_date(row.maturity, "Bond maturity")
        coupon = _number(row.coupon_pct, f"Coupon of the bond maturing {maturity}") / 100.0
        clean = _number(row.clean_price, f"Clean price of the bond maturing {maturity}")
        bonds.append(
            BondSpec.annual(
                row.issuer.strip(), maturity, coupon, settle=settlement, clean_price=clean
            )
        )
    bonds.sort(key=lambda bond: bond.maturity)
    logger.info(f"Loaded {len(bonds)} {bonds[0].issuer} bonds from {path}")
    return tuple(bonds)


class Curves(BaseModel):
    """Calibrated curves of one run with their inputs."""

    model_config = ConfigDict(frozen=True)

    quotes: tuple[OisQuote, ...]
    bonds: tuple[BondSpec, ...]
    discount: DiscountCurve
    issuer: IssuerCurve
    provenance: Provenance


def build_curves(config: RunConfig) -> Curves:
    """Load the inputs of `config` and bootstrap the discount and Zeta-spread curves."""
    settle = config.settlement_date
    quotes = load_ois(config.ois, settle)
    bonds = load_bonds(config.bonds, settle)
    discount = bootstrap_discount(quotes, settle)
    issuer = bootstrap_zeta(bonds, discount, settle)
    logger.info(
        f"Bootstrapped {len(discount.knots)} discount and {len(issuer.knots)} Zeta knots "
        f"for {issuer.issuer} at {settle}"
    )
    return Curves(
        quotes=quotes,
        bonds=bonds,
        discount=discount,
        issuer=issuer,
        provenance=build_provenance(config.ois_source, config.bonds_source, settle),
    )


def _emit(config: RunConfig, tables: list[Table]) -> list[Path]:
    emitter = emitter_for(config.format)
    return [emitter.emit_with(table, config.out) for table in tables]


def cmd_bootstrap(config: RunConfig) -> list[Path]:
    """Write the discount knots, the Zeta knots and the repricing residuals.

    Raises:
        InputError: If an input is unusable.
        CalibrationError: If an instrument cannot be repriced; the message names it.
    """
    curves = build_curves(config)
    discount, issuer = curves.discount, curves.issuer
    discount_rows = tuple(
        {
            "date": knot_date,
            "time_years": discount.time(knot_date),
            "discount_factor": factor,
            "zero_rate_pct": discount.zero_rate(knot_date) * 100.0,
        }
        for knot_date, factor in discount.knots
    )
    zeta_rows = tuple(
        {
            "maturity": knot_date,
            "time_years": issuer.time(knot_date),
            "zeta_spread_bp": spread * 1e4,
        }
        for knot_date, spread in issuer.knots
    )
    residual_rows = tuple(
        {
            "instrument": f"OIS {quote.maturity.isoformat()}",
            "invoice_price_per_100": None,
            "residual_per_100": par_residual(quote, discount) * 100.0,
        }
        for quote in curves.quotes
    ) + tuple(
        {
            "instrument": bond_id,
            "invoice_price_per_100": invoice_price(bond, issuer.anchor) * 100.0 / bond.face,
            "residual_per_100": residual * 100.0 / bond.face,
        }
        for bond, (bond_id, residual) in zip(
            curves.bonds, repricing_residuals(curves.bonds, issuer)
        )
    )
    return _emit(
        config,
        [
            Table(name="discount_curve", rows=discount_rows, provenance=curves.provenance),
            Table(name="zeta_curve", rows=zeta_rows, provenance=curves.provenance),
            Table(name="residuals", rows=residual_rows, provenance=curves.provenance),
        ],
    )


def price_reports(config: RunConfig, curves: Curves) -> tuple[LiquidityReport, ...]:
    """One report per (bond, ttl), bonds in maturity order.

    Raises:
        LiquidityPremiumError: The error of the first bond that cannot be priced, its message
            prefixed with the bond id.
    """
    reports: list[LiquidityReport] = []
    for bond in curves.bonds:
        for label, ttl in config.ttl_years():
            try:
                reports.append(build_report(bond, curves.issuer, config.params, label, ttl))
            except LiquidityPremiumError as error:
                msg = f"{bond.bond_id} @ {label}: {error}"
                raise type(error)(msg) from error
    return tuple(reports)


def cmd_price(config: RunConfig) -> tuple[LiquidityReport, ...]:
    """Price every bond for every ttl and write the reports and the per-flow spreads."""
    curves = build_curves(config)
    reports = price_reports(config, curves)
    _emit(
        config,
        [
            Table(
                name="reports",
                rows=tuple(report_row(report) for report in reports),
                provenance=curves.provenance,
            ),
            Table(
                name="flow_spreads",
                rows=tuple(row for report in reports for row in flow_spread_rows(report)),
                provenance=curves.provenance,
            ),
        ],
    )
    logger.info(f"Priced {len(reports)} (bond, ttl) pairs")
    return reports


def cmd_verify(config: RunConfig, *, self_test: bool = False) -> VerificationReport:
    """Run the Monte-Carlo sandwich check per (bond, ttl) and write `verification.json`.

    Failures are reported, not raised; the caller decides what a failure means.

    Args:
        config (RunConfig): The run configuration.
        self_test (bool): Swap the lower and upper bounds, which every check must detect.
            Defaults to False.

    Returns:
        VerificationReport: All checks.
    """
    curves = build_curves(config)
    report = verify_bonds(
        curves.bonds,
        curves.issuer,
        config.params,
        config.ttl_years(),
        config.sim_config(),
        swap_bounds=self_test,
    )
    table = Table(
        name="verification",
        rows=tuple(check.model_dump() for check in report.checks),
        provenance=curves.provenance,
        meta={
            "paths": report.paths,
            "steps": report.steps,
            "seed": report.seed,
            "swapped_bounds": report.swapped_bounds,
            "all_passed": report.all_passed,
        },
    )
    JsonEmitter().emit_with(table, config.out)
    passed = sum(check.passed for check in report.checks)
    logger.info(f"Sandwich checks: {passed}/{len(report.checks)} passed")
    return report


class FigureRow(BaseModel):
    """One point of a plotted series."""

    model_config = ConfigDict(frozen=True)

    maturity: date
    series: str
    value: float


class FigureTable(BaseModel):
    """Data of one figure: one row per (bond, series)."""

    model_config = ConfigDict(frozen=True)

    name: str
    value_column: str
    """Header of the value column, with its unit."""
    rows: tuple[FigureRow, ...]

    def to_table(self, provenance: Provenance | None = None) -> Table:
        """Rows keyed `maturity`, `series` and `value_column`."""
        return Table(
            name=self.name,
            rows=tuple(
                {"maturity": row.maturity, "series": row.series, self.value_column: row.value}
                for row in self.rows
            ),
            provenance=provenance,
        )


def figure_tables(reports: tuple[LiquidityReport, ...]) -> tuple[FigureTable, FigureTable]:
    """Bound gap per ttl, and liquid plus per-ttl illiquid yields, against bond maturity."""
    gap_rows = tuple(
        FigureRow(
            maturity=report.maturity,
            series=report.ttl_label,
            value=report.bound_gap * 100.0 / report.face,
        )
        for report in reports
    )
    yield_rows: list[FigureRow] = []
    seen: set[str] = set()
    for report in reports:
        if report.bond_id not in seen:
            seen.add(report.bond_id)
            yield_rows.append(
                FigureRow(
                    maturity=report.maturity, series="liquid", value=report.liquid_yield * 100.0
                )
            )
        yield_rows.append(
            FigureRow(
                maturity=report.maturity,
                series=f"illiquid {report.ttl_label}",
                value=report.illiquid_yield * 100.0,
            )
        )
    return (
        FigureTable(name="bound_gap", value_column="bound_gap_per_100", rows=gap_rows),
        FigureTable(name="yields", value_column="yield_pct", rows=tuple(yield_rows)),
    )


def cmd_figures(config: RunConfig) -> tuple[FigureTable, FigureTable]:
    """Write the plot data of the bound gap and of the yields against maturity."""
    curves = build_curves(config)
    figures = figure_tables(price_reports(config, curves))
    _emit(config, [figure.to_table(curves.provenance) for figure in figures])
    return figures
