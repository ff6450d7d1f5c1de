"""Monte-Carlo estimates of the expected maxima behind the liquidity premium.

Every simulation drives a single Brownian motion on a uniform grid. With `SimConfig.bridge` the
maximum inside each step is drawn from its Brownian-bridge law given the step end points, so the
running maximum of a drifted Brownian motion is sampled without discretisation bias.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator, Sequence

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    FiniteFloat,
    PositiveInt,
    model_validator,
)

from liquidity_premium.errors import InputError, ModelDomainError
from liquidity_premium.hw_model import HWParams, VolBundle

logger = logging.getLogger(__name__)


class SimConfig(BaseModel):
    """Monte-Carlo settings. Identical settings give bit-identical estimates."""

    model_config = ConfigDict(frozen=True)

    paths: PositiveInt = 100_000
    """Number of simulated paths."""
    steps: PositiveInt = 64
    """Time steps over the simulated horizon."""
    seed: int = Field(default=20150910, ge=0, lt=2**64)
    """Master seed; each block of paths gets a child seed spawned from it."""
    antithetic: bool = False
    """Pair every path with its mirror image; the standard error is then taken on pair means."""
    bridge: bool = True
    """Sample the maximum inside each step from the Brownian-bridge law."""
    block_size: PositiveInt = 20_000
    """Paths simulated at once."""

    @model_validator(mode="after")
    def _check_antithetic_pairs(self) -> SimConfig:
        if self.antithetic and (self.paths % 2 or self.block_size % 2):
            msg = "Antithetic sampling needs an even number of paths and an even block size."
            raise ValueError(msg)
        return self

    def block_sizes(self) -> list[int]:
        """Sizes of the successive path blocks."""
        full, remainder = divmod(self.paths, self.block_size)
        return [self.block_size] * full + ([remainder] if remainder else [])


class OracleEstimate(BaseModel):
    """Monte-Carlo mean with its standard error."""

    model_config = ConfigDict(frozen=True)

    mean: FiniteFloat
    std_error: FiniteFloat = Field(ge=0.0)
    """Sample standard deviation over the square root of the number of independent samples."""
    paths: PositiveInt
    argmax_coincidence: float | None = Field(default=None, ge=0.0, le=1.0)
    """Fraction of paths whose weighted sum peaks in the same step as its last flow."""


class DriftedMaximum(BaseModel):
    """Samples of the maximum of W_t + c t over [0, T] and of the step holding it."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    levels: np.ndarray
    """Maximum per path."""
    times: np.ndarray
    """Mid point of the step where the maximum is reached (0 when it is the starting point)."""


def _driver_blocks(cfg: SimConfig, dt: float) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Brownian paths on the grid (first column 0) and one uniform per step, block by block."""
    children = np.random.SeedSequence(cfg.seed).spawn(len(cfg.block_sizes()))
    for size, child in zip(cfg.block_sizes(), children):
        rng = np.random.default_rng(child)
        drawn = size // 2 if cfg.antithetic else size
        normals = rng.standard_normal((drawn, cfg.steps))
        uniforms = rng.random((drawn, cfg.steps))
        if cfg.antithetic:
            normals = np.concatenate([normals, -normals])
            uniforms = np.concatenate([uniforms, uniforms])
        paths = np.zeros((size, cfg.steps + 1))
        paths[:, 1:] = np.cumsum(normals * math.sqrt(dt), axis=1)
        yield paths, uniforms


def _step_maxima(
    paths: np.ndarray, uniforms: np.ndarray, dt: float, *, bridge: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Maximum of every step and the time it is attributed to."""
    steps = paths.shape[1] - 1
    if not bridge:
        return paths[:, 1:], dt * np.arange(1, steps + 1)
    start, end = paths[:, :-1], paths[:, 1:]
    # 1 - U lies in (0, 1], so the log is finite.
    spread = np.sqrt((end - start) ** 2 - 2.0 * dt * np.log1p(-uniforms))
    return (start + end + spread) / 2.0, dt * (np.arange(steps) + 0.5)


def _samples(values: np.ndarray, cfg: SimConfig) -> np.ndarray:
    if not cfg.antithetic:
        return values
    half = len(values) // 2
    return (values[:half] + values[half:]) / 2.0


def _estimate(
    blocks: Sequence[np.ndarray], cfg: SimConfig, argmax_coincidence: float | None = None
) -> OracleEstimate:
    samples = np.concatenate(blocks)
    std_error = 0.0
    if len(samples) > 1:
        std_error = float(np.std(samples, ddof=1) / math.sqrt(len(samples)))
    return OracleEstimate(
        mean=float(np.mean(samples)),
        std_error=std_error,
        paths=cfg.paths,
        argmax_coincidence=argmax_coincidence,
    )


def simulate_max_forward(
    bundle: VolBundle, weights: Sequence[float], cfg: SimConfig
) -> OracleEstimate:
    """Estimate E[M_τ], the expected running maximum of the forward coupon bond over the ttl.

    The forward bond is Σ_i w_i F_i(t), where F_i(t) = exp(ζ_i W(t̃) - ζ_i² t̃ / 2) is the i-th
    forward zero-coupon bond over its initial value, driftless on the changed clock t̃.
    Writing x = W - ζ_N t̃ / 2 gives F_i = exp(ζ_i x + ζ_i (ζ_N - ζ_i) t̃ / 2), so the last flow
    is maximal exactly where x is; the other flows are evaluated at the step maximum of x.

    Args:
        bundle (VolBundle): Volatilities of the flows after the ttl, in payment order.
        weights (Sequence[float]): Forward values w_i = c_i B̄(t0, t_i) / B̄(t0, τ).
        cfg (SimConfig): Monte-Carlo settings.

    Returns:
        OracleEstimate: E[M_τ] in the units of `weights`, with the argmax coincidence frequency.

    Raises:
        InputError: If there is not one weight per flow.
    """
    if len(weights) != len(bundle.zeta) or not weights:
        msg = f"Expected {len(bundle.zeta)} weights, one per flow, got {len(weights)}."
        raise InputError(msg)
    w = np.asarray(weights, dtype=float)
    zeta = np.asarray(bundle.zeta, dtype=float)
    if bundle.clock == 0.0 or not np.any(zeta):
        return OracleEstimate(
            mean=float(w.sum()), std_error=0.0, paths=cfg.paths, argmax_coincidence=1.0
        )

    dt = bundle.clock / cfg.steps
    grid = dt * np.arange(cfg.steps + 1)
    last = zeta[-1]
    blocks: list[np.ndarray] = []
    coincident = 0
    for paths, uniforms in _driver_blocks(cfg, dt):
        driver = paths - last * grid / 2.0
        maxima, times = _step_maxima(driver, uniforms, dt, bridge=cfg.bridge)
        total = np.zeros_like(maxima)
        for weight, scale in zip(w, zeta):
            total += weight * np.exp(scale * maxima + scale * (last - scale) * times / 2.0)
        total = np.column_stack([np.full(len(total), w.sum()), total])
        last_levels = np.column_stack([np.zeros(len(maxima)), maxima])
        coincident += int(np.sum(total.argmax(axis=1) == last_levels.argmax(axis=1)))
        blocks.append(_samples(total.max(axis=1), cfg))

    estimate = _estimate(blocks, cfg, argmax_coincidence=coincident / cfg.paths)
    logger.debug(
        f"E[M] = {estimate.mean:.10f} ± {estimate.std_error:.2e}, "
        f"argmax coincidence {estimate.argmax_coincidence:.4f}"
    )
    return estimate


def simulate_drifted_maximum(drift: float, horizon: float, cfg: SimConfig) -> DriftedMaximum:
    """Sample the maximum of W_t + `drift` t over [0, `horizon`] and the step where it occurs.

    Raises:
        ModelDomainError: If `horizon` is not positive.
    """
    if horizon <= 0.0:
        msg = f"Horizon must be positive, got {horizon}."
        raise ModelDomainError(msg)
    dt = horizon / cfg.steps
    grid = dt * np.arange(cfg.steps + 1)
    levels: list[np.ndarray] = []
    times: list[np.ndarray] = []
    for paths, uniforms in _driver_blocks(cfg, dt):
        maxima, step_times = _step_maxima(paths + drift * grid, uniforms, dt, bridge=cfg.bridge)
        full = np.column_stack([np.zeros(len(maxima)), maxima])
        where = full.argmax(axis=1)
        levels.append(full[np.arange(len(full)), where])
        times.append(np.concatenate([[0.0], step_times])[where])
    return DriftedMaximum(levels=np.concatenate(levels), times=np.concatenate(times))


def mc_pi_lower(cumulated: float, last: float, cfg: SimConfig) -> OracleEstimate:
    """Brute-force π^L(Σ_i, Σ_N).

    On a unit clock x(θ) = W(θ) - Σ_N θ / 2; θ* is the time where x, hence the last forward bond,
    is maximal. Each path contributes exp(Σ_i (x(θ*) - (Σ_i - Σ_N) θ* / 2)), the i-th forward bond
    at θ*.

    Raises:
        ModelDomainError: If `cumulated` is negative or larger than `last`.
    """
    if not 0.0 <= cumulated <= last:
        msg = f"Need 0 ≤ Σ_i ≤ Σ_N, got Σ_i = {cumulated} and Σ_N = {last}."
        raise ModelDomainError(msg)
    if last == 0.0:
        return OracleEstimate(mean=1.0, std_error=0.0, paths=cfg.paths)

    dt = 1.0 / cfg.steps
    grid = dt * np.arange(cfg.steps + 1)
    blocks: list[np.ndarray] = []
    for paths, uniforms in _driver_blocks(cfg, dt):
        maxima, times = _step_maxima(paths - last * grid / 2.0, uniforms, dt, bridge=cfg.bridge)
        full = np.column_stack([np.zeros(len(maxima)), maxima])
        where = full.argmax(axis=1)
        level = full[np.arange(len(full)), where]
        theta = np.concatenate([[0.0], times])[where]
        values = np.exp(cumulated * (level - (cumulated - last) * theta / 2.0))
        blocks.append(_samples(values, cfg))
    return _estimate(blocks, cfg)


def oracle_survival(
    p: HWParams, psi_integral: float, ttl: float, cfg: SimConfig
) -> OracleEstimate:
    """Brute-force E[exp(-∫_0^τ λ_t dt)] with λ_t = ψ_t + γ̂ x_t.

    The Ornstein-Uhlenbeck factor x is stepped with its exact Gaussian transition and its integral
    is taken with the trapezoid rule.

    Args:
        p (HWParams): Model parameters.
        psi_integral (float): ∫_0^τ ψ_t dt.
        ttl (float): Horizon τ > 0, years.
        cfg (SimConfig): Monte-Carlo settings.

    Returns:
        OracleEstimate: The survival probability estimate.

    Raises:
        ModelDomainError: If `ttl` is not positive.
    """
    if ttl <= 0.0:
        msg = f"Time-to-liquidate must be positive, got {ttl}."
        raise ModelDomainError(msg)
    deterministic = math.exp(-psi_integral)
    if p.gamma_hat == 0.0 or p.sigma_hat == 0.0:
        return OracleEstimate(mean=deterministic, std_error=0.0, paths=cfg.paths)

    dt = ttl / cfg.steps
    decay = math.exp(-p.a_hat * dt)
    step_std = p.sigma_hat * math.sqrt(-math.expm1(-2.0 * p.a_hat * dt) / (2.0 * p.a_hat))
    blocks: list[np.ndarray] = []
    for paths, _ in _driver_blocks(cfg, dt):
        # Unit-variance shocks recovered from the Brownian increments.
        shocks = np.diff(paths, axis=1) / math.sqrt(dt)
        state = np.zeros(len(paths))
        integral = np.zeros(len(paths))
        for k in range(cfg.steps):
            following = state * decay + step_std * shocks[:, k]
            integral += (state + following) * dt / 2.0
            state = following
        blocks.append(_samples(deterministic * np.exp(-p.gamma_hat * integral), cfg))
    return _estimate(blocks, cfg)
