"""Joint density of the maximum of a drifted Brownian motion and of the time it is reached.

For X_t = W_t + c t on [0, T], the maximum y > 0 and its location θ ∈ (0, T) have density

    p(θ, y; c, T) = (1/π) y / (√(T - θ) θ^{3/2}) exp(-c² T / 2 - y² / (2θ) + c y)
                    × {1 - √(2π (T - θ)) c e^{c² (T - θ) / 2} Φ(-c √(T - θ))}.

Integrals use θ = T sin²u and y = √θ v, which turn the density into the bounded integrand
(2/π) v exp(-c² T / 2 - v² / 2 + c √θ v) {...} on u ∈ (0, π/2), v > 0.
"""

from __future__ import annotations

import math

from scipy.integrate import dblquad
from scipy.stats import norm

from liquidity_premium.errors import ModelDomainError

_TOLERANCE = 1e-11
_V_CUTOFF = 40.0
"""Scaled levels beyond this carry no mass; finite bounds above it are integrated to infinity."""


def _after_maximum(c: float, remaining: float) -> float:
    """Curly-bracket factor: the path must stay below its maximum over the remaining time."""
    root = math.sqrt(remaining)
    return 1.0 - math.sqrt(2.0 * math.pi * remaining) * c * math.exp(
        c * c * remaining / 2.0
    ) * float(norm.cdf(-c * root))


def shepp_density(theta: float, y: float, c: float, horizon: float) -> float:
    """Joint density p(θ, y; c, T) of the location and value of the maximum.

    Raises:
        ModelDomainError: If `theta` is outside (0, `horizon`) or `y` is not positive.
    """
    if not 0.0 < theta < horizon:
        msg = f"Maximum location {theta} must lie in (0, {horizon})."
        raise ModelDomainError(msg)
    if y <= 0.0:
        msg = f"Maximum level must be positive, got {y}."
        raise ModelDomainError(msg)
    remaining = horizon - theta
    return (
        y
        / (math.pi * math.sqrt(remaining) * theta**1.5)
        * math.exp(-c * c * horizon / 2.0 - y * y / (2.0 * theta) + c * y)
        * _after_maximum(c, remaining)
    )


def _scaled_integrand(v: float, u: float, c: float, horizon: float) -> float:
    theta = horizon * math.sin(u) ** 2
    return (
        2.0
        / math.pi
        * v
        * math.exp(-c * c * horizon / 2.0 - v * v / 2.0 + c * math.sqrt(theta) * v)
        * _after_maximum(c, horizon - theta)
    )


def shepp_cell_probability(
    c: float,
    horizon: float,
    times: tuple[float, float],
    levels: tuple[float, float],
) -> float:
    """Probability that the maximum location is in `times` and its value in `levels`.

    Args:
        c (float): Drift of the Brownian motion.
        horizon (float): Horizon T.
        times (tuple[float, float]): Interval of θ inside [0, T].
        levels (tuple[float, float]): Interval of y inside [0, ∞]; the upper end may be `math.inf`.

    Returns:
        float: The probability.
    """
    u_low = math.asin(math.sqrt(times[0] / horizon))
    u_high = math.asin(math.sqrt(times[1] / horizon))

    def scaled(level: float, u: float) -> float:
        root_theta = math.sqrt(horizon) * math.sin(u)
        if level == 0.0:
            return 0.0
        if math.isinf(level) or root_theta == 0.0:
            return math.inf
        return level / root_theta

    def v_low(u: float) -> float:
        return min(scaled(levels[0], u), _V_CUTOFF)

    def v_high(u: float) -> float:
        bound = scaled(levels[1], u)
        return math.inf if bound > _V_CUTOFF else bound

    value, _ = dblquad(
        _scaled_integrand,
        u_low,
        u_high,
        v_low,
        v_high,
        args=(c, horizon),
        epsabs=_TOLERANCE,
        epsrel=_TOLERANCE,
    )
    return value


def shepp_total_mass(c: float, horizon: float) -> float:
    """∬ p dθ dy over (0, T) × (0, ∞); one for a proper density."""
    return shepp_cell_probability(c, horizon, (0.0, horizon), (0.0, math.inf))


def shepp_max_cdf(y: float, c: float, horizon: float) -> float:
    """P(max_{t ≤ T} X_t ≤ y) obtained by integrating the density over θ."""
    return shepp_cell_probability(c, horizon, (0.0, horizon), (0.0, y))
