"""Bundled sample inputs: two issuers' bond tables and an approximate EUR OIS curve."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path

from liquidity_premium.errors import InputError

SAMPLES = ("bnpp", "santander")
"""Names of the bundled sample configurations."""


def data_path(name: str) -> Path:
    """Path of a bundled data file."""
    return Path(str(files(__package__) / name))


def sample_config(sample: str) -> Path:
    """Path of the bundled TOML config of `sample`.

    Raises:
        InputError: If there is no such sample.
    """
    if sample not in SAMPLES:
        msg = f"Unknown sample {sample!r}; choose one of {list(SAMPLES)}."
        raise InputError(msg)
    return data_path(f"{sample}.toml")
