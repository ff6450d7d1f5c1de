"""RunConfig model and its TOML loader."""

from __future__ import annotations

import logging
import tomllib
from datetime import date
from pathlib import Path
from typing import Any, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

from liquidity_premium.errors import InputError
from liquidity_premium.hw_model import HWParams
from liquidity_premium.oracle.simulation import SimConfig
from liquidity_premium.termstructure.dates import (
    DayCount,
    add_business_days,
    advance,
    year_fraction,
)

logger = logging.getLogger(__name__)

_PARAM_KEYS = ("a_hat", "sigma_hat", "gamma_hat")
_PATH_KEYS = ("ois", "bonds")


class RunConfig(BaseModel):
    """Everything one run of the pipeline needs.

    The TOML file is flat: the model parameters are given as top-level `a_hat`, `sigma_hat` and
    `gamma_hat` keys and collected into `params`. Relative `ois` and `bonds` paths are resolved
    against the directory of the config file by `load_config`.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    value_date: date
    """Trade date; settlement is `settlement_lag` business days later."""
    settlement_lag: NonNegativeInt = 2
    """Business days (weekends skipped) from `value_date` to settlement."""
    params: HWParams = HWParams()
    """Model parameters (â, σ̂, γ̂)."""
    ttl: tuple[str, ...] = ("2w", "2m")
    """Times-to-liquidate as `<n>d|w|m|y` tenors; `"0d"` is the liquid limit."""
    ois: Path
    """CSV of OIS quotes with columns `date` (ISO maturity) and `rate` (decimal)."""
    bonds: Path
    """CSV of bonds with columns `issuer`, `maturity`, `coupon_pct` and `clean_price`."""
    ois_source: str = "user-supplied"
    """Provenance label of the OIS quotes."""
    bonds_source: str = "user-supplied"
    """Provenance label of the bond table."""
    out: Path = Path("out")
    """Output directory."""
    format: Literal["csv", "json"] = "csv"
    """Emission format of tables."""
    seed: int = Field(default=20150910, ge=0, lt=2**64)
    """Master seed of the Monte-Carlo checks."""
    paths: PositiveInt = 100_000
    """Paths per Monte-Carlo check."""
    steps: PositiveInt = 64
    """Time steps per ttl in the Monte-Carlo checks."""

    @model_validator(mode="before")
    @classmethod
    def _collect_params(cls, data: Any) -> Any:  # noqa: ANN401; raw input of a before validator.
        if not isinstance(data, dict) or not any(key in data for key in _PARAM_KEYS):
            return data
        data = dict(data)
        params = dict(data.pop("params", {}) or {})
        for key in _PARAM_KEYS:
            if key in data:
                params[key] = data.pop(key)
        data["params"] = params
        return data

    @field_validator("ttl")
    @classmethod
    def _check_ttl(cls, ttl: tuple[str, ...]) -> tuple[str, ...]:
        if not ttl:
            msg = "At least one ttl is needed."
            raise ValueError(msg)
        for tenor in ttl:
            advance(date(2000, 1, 1), tenor)
        if len(set(ttl)) != len(ttl):
            msg = f"Duplicated ttl in {list(ttl)}."
            raise ValueError(msg)
        return ttl

    @property
    def settlement_date(self) -> date:
        """Value date plus the settlement lag."""
        return add_business_days(self.value_date, self.settlement_lag)

    def ttl_years(self) -> tuple[tuple[str, float], ...]:
        """Each ttl label with its Act/365 year fraction from settlement."""
        settle = self.settlement_date
        return tuple(
            (tenor, year_fraction(settle, advance(settle, tenor), DayCount.ACT_365))
            for tenor in self.ttl
        )

    def sim_config(self) -> SimConfig:
        """Monte-Carlo settings of the run."""
        return SimConfig(paths=self.paths, steps=self.steps, seed=self.seed)

    def with_overrides(self, **overrides: Any) -> RunConfig:  # noqa: ANN401; any field value.
        """Copy with the given fields replaced, `None` values ignored, validated again.

        Raises:
            InputError: If an override is invalid.
        """
        updates = {key: value for key, value in overrides.items() if value is not None}
        if not updates:
            return self
        try:
            return RunConfig.model_validate({**self.model_dump(), **updates})
        except ValidationError as ve:
            msg = f"Invalid override {updates}: {ve}"
            raise InputError(msg) from ve


def load_config(path: Path) -> RunConfig:
    """Read a flat TOML config file.

    Args:
        path (Path): The config file.

    Returns:
        RunConfig: The validated config, input paths made absolute.

    Raises:
        InputError: If the file cannot be read or parsed, a value is invalid, or an input file is
            missing.
    """
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as oe:
        msg = f"Cannot read config file {path}: {oe}"
        raise InputError(msg) from oe
    except tomllib.TOMLDecodeError as de:
        msg = f"Config file {path} is not valid TOML: {de}"
        raise InputError(msg) from de

    base = path.parent
    for key in (*_PATH_KEYS, "out"):
        if key in raw:
            raw[key] = str((base / raw[key]).resolve())
    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as ve:
        msg = f"Invalid config file {path}: {ve}"
        raise InputError(msg) from ve

    for key in _PATH_KEYS:
        input_path: Path = getattr(config, key)
        if not input_path.is_file():
            msg = f"Input file `{key}` = {input_path} does not exist."
            raise InputError(msg)
    logger.debug(f"Loaded config {path}: settlement {config.settlement_date}")
    return config
