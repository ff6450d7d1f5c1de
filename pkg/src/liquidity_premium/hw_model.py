"""One-factor Hull-White volatility of the defaultable rate and the quantities derived from it.

The short rate and the default intensity share one Ornstein-Uhlenbeck driver x_t:

    r_t = φ_t + (1 - γ̂) x_t,    λ_t = ψ_t + γ̂ x_t,    dx_t = -â x_t dt + σ̂ dW_t,  x_0 = 0.

All times are Act/365 year fractions measured from settlement.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat

from liquidity_premium.errors import ModelDomainError

if TYPE_CHECKING:
    from liquidity_premium.termstructure.issuer import IssuerCurve

_SERIES_THRESHOLD = 1e-3


class HWParams(BaseModel):
    """Volatility parameters (â, σ̂, γ̂); defaults are the EUR 2015 calibrated values."""

    model_config = ConfigDict(frozen=True)

    a_hat: PositiveFloat = 0.1294
    """Mean-reversion speed â, 1/years."""
    sigma_hat: NonNegativeFloat = 0.0126
    """Short-rate volatility σ̂, absolute per annum."""
    gamma_hat: float = Field(default=0.0007, ge=0.0, le=1.0)
    """Fraction γ̂ of the common driver assigned to the default intensity."""


class VolBundle(BaseModel):
    """Separable forward volatilities ζ_i ν(t) of the flows paid after the ttl."""

    model_config = ConfigDict(frozen=True)

    ttl: float
    """Time-to-liquidate τ, years."""
    times: tuple[float, ...]
    """Payment times t_i ≥ τ, years."""
    zeta: tuple[float, ...]
    """Per-flow volatility scale ζ_i = (σ̂/â)(1 - e^{-â(t_i - τ)})."""
    cumulated: tuple[float, ...]
    """Cumulated volatility Σ_i(τ) = ζ_i sqrt(∫ν²)."""
    clock: float
    """Length of the changed clock, ∫_0^τ ν²(s) ds with ν(s) = e^{-â(τ - s)}."""


def _decay_integral(a: float, x: float) -> float:
    """(1 - e^{-a x}) / a without cancellation for small a x."""
    return -math.expm1(-a * x) / a


def zc_volatility(p: HWParams, t: float, T: float) -> float:
    """Defaultable zero-coupon volatility σ̄(t, T) = (σ̂/â)(1 - e^{-â(T - t)}).

    Raises:
        ModelDomainError: If `t` is after `T`.
    """
    if t > T:
        msg = f"Volatility time {t} is after the bond maturity {T}."
        raise ModelDomainError(msg)
    return p.sigma_hat * _decay_integral(p.a_hat, T - t)


def changed_clock(p: HWParams, ttl: float) -> float:
    """∫_0^τ e^{-2â(τ - s)} ds, the clock on which the forward bonds are Brownian."""
    return _decay_integral(2.0 * p.a_hat, ttl)


def vol_bundle(p: HWParams, ttl: float, times: Sequence[float]) -> VolBundle:
    """Per-flow volatility scales and cumulated volatilities at the ttl.

    Args:
        p (HWParams): Model parameters.
        ttl (float): Time-to-liquidate τ > 0, years.
        times (Sequence[float]): Payment times t_i ≥ τ, years.

    Returns:
        VolBundle: The volatility bundle.

    Raises:
        ModelDomainError: If `ttl` is not positive or a payment time precedes it.
    """
    if ttl <= 0.0:
        msg = f"Time-to-liquidate must be positive, got {ttl}."
        raise ModelDomainError(msg)
    if any(t < ttl for t in times):
        msg = f"Payment times {list(times)} include flows before the ttl {ttl}; strip them first."
        raise ModelDomainError(msg)
    clock = changed_clock(p, ttl)
    zeta = tuple(p.sigma_hat * _decay_integral(p.a_hat, t - ttl) for t in times)
    cumulated = tuple(scale * math.sqrt(clock) for scale in zeta)
    return VolBundle(ttl=ttl, times=tuple(times), zeta=zeta, cumulated=cumulated, clock=clock)


def integral_sigma_sq(p: HWParams, ttl: float) -> float:
    """∫_0^τ σ̄²(s, τ) ds in closed form.

    Raises:
        ModelDomainError: If `ttl` is negative.
    """
    if ttl < 0.0:
        msg = f"Time-to-liquidate must be non-negative, got {ttl}."
        raise ModelDomainError(msg)
    x = p.a_hat * ttl
    if x < _SERIES_THRESHOLD:
        # ∫_0^x (1 - e^{-u})² du, Taylor expanded.
        shape = x**3 / 3.0 - x**4 / 4.0 + 7.0 * x**5 / 60.0 - x**6 / 24.0
    else:
        shape = x + 2.0 * math.expm1(-x) - math.expm1(-2.0 * x) / 2.0
    return p.sigma_hat**2 * shape / p.a_hat**3


def psi_integral(p: HWParams, issuer: IssuerCurve, ttl: float) -> float:
    """∫_0^τ ψ_s ds implied by the calibrated curves.

    In this Gaussian model -ln(B̄/B) = ∫ψ - γ̂(1 - γ̂/2)∫σ̄², and -ln(B̄/B) = Z(τ) τ.
    """
    return issuer.zeta_at(ttl) * ttl + p.gamma_hat * (1.0 - p.gamma_hat / 2.0) * integral_sigma_sq(
        p, ttl
    )


def survival_probability(p: HWParams, issuer: IssuerCurve, ttl: float) -> float:
    """Issuer survival probability up to the ttl, exp(-∫ψ + (γ̂²/2)∫σ̄²).

    Args:
        p (HWParams): Model parameters.
        issuer (IssuerCurve): Calibrated issuer curve.
        ttl (float): Time-to-liquidate, years. Zero gives 1.

    Returns:
        float: The survival probability.
    """
    variance = integral_sigma_sq(p, ttl)
    return math.exp(-psi_integral(p, issuer, ttl) + 0.5 * p.gamma_hat**2 * variance)


def separability_residual(p: HWParams, ttl: float, t: float, payment: float) -> float:
    """σ̄(t, t_i) - σ̄(t, τ) - ζ_i e^{-â(τ - t)}; zero up to rounding for t ≤ τ ≤ t_i."""
    scale = p.sigma_hat * _decay_integral(p.a_hat, payment - ttl)
    return (
        zc_volatility(p, t, payment)
        - zc_volatility(p, t, ttl)
        - scale * float(np.exp(-p.a_hat * (ttl - t)))
    )
