from liquidity_premium.engine.factors import PiFactors, pi_lower, pi_upper
from liquidity_premium.engine.premium import (
    RetainedFlow,
    ZcDecomposition,
    decompose_zc,
    forward_coupon_bond,
    forward_weights,
    illiquid_discount,
    illiquid_price,
    pi_factors,
    premium_bounds,
    sheer_spread,
    split_flows,
)
from liquidity_premium.engine.report import (
    FlowSpread,
    LiquidityReport,
    build_report,
    flow_spread_rows,
    report_row,
)
from liquidity_premium.engine.yields import bond_yield, liquidity_yield_spread, yield_from_flows

__all__ = [
    "FlowSpread",
    "LiquidityReport",
    "PiFactors",
    "RetainedFlow",
    "ZcDecomposition",
    "bond_yield",
    "build_report",
    "decompose_zc",
    "flow_spread_rows",
    "forward_coupon_bond",
    "forward_weights",
    "illiquid_discount",
    "illiquid_price",
    "liquidity_yield_spread",
    "pi_factors",
    "pi_lower",
    "pi_upper",
    "premium_bounds",
    "report_row",
    "sheer_spread",
    "split_flows",
    "yield_from_flows",
]
