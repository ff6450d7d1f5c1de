"""Expected-maximum factors π^U and π^L of the forward defaultable zero-coupon bonds."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel, ConfigDict
from scipy.stats import norm

from liquidity_premium.errors import ModelDomainError

DEFAULT_ORDER = 96
"""Gauss-Legendre order used for π^L."""

_SQRT_HALF_PI = math.sqrt(math.pi / 2.0)


class PiFactors(BaseModel):
    """Per-flow factors of the flows retained after the ttl, in payment order."""

    model_config = ConfigDict(frozen=True)

    times: tuple[float, ...]
    """Payment times t_i > τ, years."""
    upper: tuple[float, ...]
    """π^U_i, expected maximum of the i-th forward bond over its initial value."""
    lower: tuple[float, ...]
    """π^L_i, the i-th forward bond taken at the argmax time of the last one."""


def pi_upper(cumulated: float) -> float:
    """Upper factor π^U(Σ) = ((4 + Σ²)/2) Φ(Σ/2) + (Σ/√(2π)) e^{-Σ²/8}.

    Args:
        cumulated (float): Cumulated volatility Σ ≥ 0.

    Returns:
        float: The factor, 1 at Σ = 0.

    Raises:
        ModelDomainError: If `cumulated` is negative.
    """
    if cumulated < 0.0:
        msg = f"Cumulated volatility must be non-negative, got {cumulated}."
        raise ModelDomainError(msg)
    if cumulated == 0.0:
        return 1.0
    s = cumulated
    return float(
        (4.0 + s * s) / 2.0 * norm.cdf(s / 2.0)
        + s / math.sqrt(2.0 * math.pi) * math.exp(-s * s / 8.0)
    )


@lru_cache(maxsize=8)
def _quarter_circle_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(order)
    # [-1, 1] -> (0, π/2)
    return (nodes + 1.0) * math.pi / 4.0, weights * math.pi / 4.0


def _pi_lower_integrand(u: np.ndarray, cumulated: float, last: float) -> np.ndarray:
    s, big = cumulated, last
    c = 2.0 * s - big
    sin_u, cos_u = np.sin(u), np.cos(u)
    sin_sq = sin_u * sin_u
    last_factor = 1.0 + _SQRT_HALF_PI * cos_u * big * np.exp(
        cos_u * cos_u * big * big / 8.0
    ) * norm.cdf(cos_u * big / 2.0)
    flow_factor = 1.0 + _SQRT_HALF_PI * sin_u * c * np.exp(sin_sq * c * c / 8.0) * norm.cdf(
        sin_u * c / 2.0
    )
    return (
        2.0
        / math.pi
        * np.exp(-big * big / 8.0 - sin_sq / 2.0 * s * (s - big))
        * last_factor
        * flow_factor
    )


def pi_lower(cumulated: float, last: float, order: int = DEFAULT_ORDER) -> float:
    """Lower factor π^L(Σ_i, Σ_N).

    The integral over the argmax time η ∈ (0, 1) of the last flow is taken after substituting
    η = sin²u, which removes the 1/√η and 1/√(1 - η) endpoint singularities, and is evaluated with
    a fixed Gauss-Legendre rule on u ∈ (0, π/2).

    Args:
        cumulated (float): Cumulated volatility Σ_i of the flow.
        last (float): Cumulated volatility Σ_N of the last retained flow.
        order (int): Gauss-Legendre order. Defaults to `DEFAULT_ORDER`.

    Returns:
        float: The factor, between 1 and `pi_upper(cumulated)`.

    Raises:
        ModelDomainError: If `cumulated` is negative or larger than `last`.
    """
    if cumulated < 0.0:
        msg = f"Cumulated volatility must be non-negative, got {cumulated}."
        raise ModelDomainError(msg)
    if cumulated > last:
        msg = (
            f"Cumulated volatility {cumulated} exceeds the one of the last flow {last}; flows "
            "must be ordered by payment date."
        )
        raise ModelDomainError(msg)
    if last == 0.0:
        return 1.0
    nodes, weights = _quarter_circle_rule(order)
    return float(np.dot(weights, _pi_lower_integrand(nodes, cumulated, last)))
