from liquidity_premium.termstructure.bonds import BondSpec, accrued_interest, invoice_price
from liquidity_premium.termstructure.dates import (
    DayCount,
    MarketDate,
    add_business_days,
    advance,
    annual_schedule,
    year_fraction,
)
from liquidity_premium.termstructure.discount import (
    DiscountCurve,
    OisQuote,
    bootstrap_discount,
    par_residual,
)
from liquidity_premium.termstructure.issuer import (
    IssuerCurve,
    bootstrap_zeta,
    defaultable_discount,
    price_liquid_bond,
    repricing_residuals,
)

__all__ = [
    "BondSpec",
    "DayCount",
    "DiscountCurve",
    "IssuerCurve",
    "MarketDate",
    "OisQuote",
    "accrued_interest",
    "add_business_days",
    "advance",
    "annual_schedule",
    "bootstrap_discount",
    "bootstrap_zeta",
    "defaultable_discount",
    "invoice_price",
    "par_residual",
    "price_liquid_bond",
    "repricing_residuals",
    "year_fraction",
]
