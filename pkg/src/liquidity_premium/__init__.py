"""Liquidity premia of illiquid corporate bonds under a one-factor Hull-White model."""

from typing import Any

from liquidity_premium.configuration import RunConfig, load_config
from liquidity_premium.engine import (
    LiquidityReport,
    bond_yield,
    illiquid_price,
    liquidity_yield_spread,
    pi_lower,
    pi_upper,
    premium_bounds,
    sheer_spread,
)
from liquidity_premium.errors import (
    CalibrationError,
    InputError,
    LiquidityPremiumError,
    ModelDomainError,
    VerificationError,
)
from liquidity_premium.hw_model import HWParams, survival_probability
from liquidity_premium.provenance import version_reader


def __getattr__(name: str) -> Any:  # noqa: ANN401; module level fallback.
    """Fallback to lazy load version information."""
    if name in ("__version__", "__version_tuple__"):
        return version_reader.read(name)
    message = f"Module 'liquidity_premium' has no attribute '{name}'."
    raise AttributeError(message)


__all__ = [
    "CalibrationError",
    "HWParams",
    "InputError",
    "LiquidityPremiumError",
    "LiquidityReport",
    "ModelDomainError",
    "RunConfig",
    "VerificationError",
    "bond_yield",
    "illiquid_price",
    "liquidity_yield_spread",
    "load_config",
    "pi_lower",
    "pi_upper",
    "premium_bounds",
    "sheer_spread",
    "survival_probability",
]

__version__: str
__version_tuple__: tuple[str | int, ...]
