"""Monte-Carlo sandwich check of the closed-form premium bounds."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Literal

from pydantic import BaseModel, ConfigDict, computed_field

from liquidity_premium.engine.premium import forward_weights, premium_bounds, split_flows
from liquidity_premium.hw_model import HWParams, survival_probability, vol_bundle
from liquidity_premium.oracle.simulation import SimConfig, simulate_max_forward
from liquidity_premium.termstructure.bonds import BondSpec
from liquidity_premium.termstructure.issuer import IssuerCurve

logger = logging.getLogger(__name__)

SE_BAND = 3.0
"""Half width, in standard errors, of the accepted window around the bounds."""


class SandwichCheck(BaseModel):
    """Outcome of Δ_lower - 3 SE ≤ Monte-Carlo premium ≤ Δ_upper + 3 SE for one bond and ttl.

    Monetary amounts are per bond face.
    """

    model_config = ConfigDict(frozen=True)

    bond_id: str
    ttl_label: str
    ttl: float
    delta_lower: float
    delta_upper: float
    mc_premium: float
    std_error: float
    argmax_coincidence: float | None
    passed: bool

    @computed_field  # type: ignore[prop-decorator]; pydantic computed property.
    @property
    def status(self) -> Literal["PASS", "FAIL"]:
        """`PASS` or `FAIL`, as written to `verification.json`."""
        return "PASS" if self.passed else "FAIL"


class VerificationReport(BaseModel):
    """All sandwich checks of one run."""

    model_config = ConfigDict(frozen=True)

    checks: tuple[SandwichCheck, ...]
    paths: int
    steps: int
    seed: int
    swapped_bounds: bool
    """Whether the bounds were deliberately swapped (negative control)."""

    @property
    def all_passed(self) -> bool:
        """True when every check passed."""
        return all(check.passed for check in self.checks)


def sandwich_check(
    bond: BondSpec,
    issuer: IssuerCurve,
    p: HWParams,
    ttl_label: str,
    ttl: float,
    cfg: SimConfig,
    *,
    swap_bounds: bool = False,
) -> SandwichCheck:
    """Compare the simulated premium B̄(t0, τ) E[M_τ] - P Σ c_i B̄_i with the closed-form bounds.

    Args:
        bond (BondSpec): The bond.
        issuer (IssuerCurve): Calibrated issuer curve.
        p (HWParams): Model parameters.
        ttl_label (str): The ttl as configured.
        ttl (float): The ttl in years.
        cfg (SimConfig): Monte-Carlo settings.
        swap_bounds (bool): Exchange the lower and upper bounds before checking. Defaults to False.

    Returns:
        SandwichCheck: The check. It passes only if the bounds are ordered and the estimate lies
            within `SE_BAND` standard errors of them.
    """
    lower, upper = premium_bounds(bond, issuer, p, ttl)
    if swap_bounds:
        lower, upper = upper, lower

    if ttl == 0.0:
        mc_premium, std_error, coincidence = 0.0, 0.0, None
    else:
        _, retained = split_flows(bond, issuer, ttl)
        weights = forward_weights(bond, issuer, ttl)
        bundle = vol_bundle(p, ttl, [flow.time for flow in retained])
        estimate = simulate_max_forward(bundle, weights, cfg)
        at_ttl = issuer.defaultable_discount_at(ttl)
        survival = survival_probability(p, issuer, ttl)
        mc_premium = at_ttl * (estimate.mean - survival * sum(weights))
        std_error = at_ttl * estimate.std_error
        coincidence = estimate.argmax_coincidence

    passed = (
        lower <= upper
        and lower - SE_BAND * std_error <= mc_premium <= upper + SE_BAND * std_error
    )
    level = logging.INFO if passed else logging.WARNING
    logger.log(
        level,
        f"{bond.bond_id} @ {ttl_label}: MC {mc_premium:.8f} ± {std_error:.2e} vs "
        f"[{lower:.8f}, {upper:.8f}] -> {'PASS' if passed else 'FAIL'}",
    )
    return SandwichCheck(
        bond_id=bond.bond_id,
        ttl_label=ttl_label,
        ttl=ttl,
        delta_lower=lower,
        delta_upper=upper,
        mc_premium=mc_premium,
        std_error=std_error,
        argmax_coincidence=coincidence,
        passed=passed,
    )


def verify_bonds(
    bonds: Sequence[BondSpec],
    issuer: IssuerCurve,
    p: HWParams,
    ttls: Sequence[tuple[str, float]],
    cfg: SimConfig,
    *,
    swap_bounds: bool = False,
) -> VerificationReport:
    """Run `sandwich_check` for every bond and ttl, bonds in the outer loop."""
    checks = tuple(
        sandwich_check(bond, issuer, p, label, ttl, cfg, swap_bounds=swap_bounds)
        for bond in bonds
        for label, ttl in ttls
    )
    return VerificationReport(
        checks=checks,
        paths=cfg.paths,
        steps=cfg.steps,
        seed=cfg.seed,
        swapped_bounds=swap_bounds,
    )
