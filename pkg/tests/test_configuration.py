from __future__ import annotations

import shutil
from datetime import date
from pathlib import Path

import pytest
from pydantic import ValidationError

from liquidity_premium.configuration import RunConfig, load_config
from liquidity_premium.data import data_path, sample_config
from liquidity_premium.errors import InputError
from liquidity_premium.hw_model import HWParams


@pytest.fixture
def workdir(tmp_path: Path) -> Path:
    """Directory holding copies of the bundled OIS and BNPP inputs."""
    for name in ("ois_eur_2015-09.csv", "bnpp_bonds.csv"):
        shutil.copy(data_path(name), tmp_path / name)
    return tmp_path


def write_config(directory: Path, body: str) -> Path:
    """Write a config with the bundled inputs and `body` appended."""
    path = directory / "run.toml"
    path.write_text(
        'value_date = 2015-09-10\nois = "ois_eur_2015-09.csv"\nbonds = "bnpp_bonds.csv"\n' + body,
        encoding="utf-8",
    )
    return path


class TestRunConfig:
    """Test the `RunConfig` model."""

    def test_bundled_sample(self, bnpp_config: RunConfig) -> None:
        """Test the bundled BNPP config loads with the calibrated parameters."""
        assert bnpp_config.params == HWParams(a_hat=0.1294, sigma_hat=0.0126, gamma_hat=0.0007)
        assert bnpp_config.settlement_date == date(2015, 9, 14)
        assert bnpp_config.ois_source == "bundled-approximate (not paper data)"
        assert bnpp_config.bonds_source == "paper-table"
        assert bnpp_config.ois.is_file()

    def test_ttl_years(self, bnpp_config: RunConfig) -> None:
        """Test ttl labels become Act/365 calendar day fractions from settlement."""
        assert bnpp_config.ttl_years() == (("2w", 14 / 365), ("2m", 61 / 365))

    def test_sim_config(self, bnpp_config: RunConfig) -> None:
        """Test the Monte-Carlo settings follow the config."""
        cfg = bnpp_config.sim_config()
        assert (cfg.paths, cfg.steps, cfg.seed) == (100_000, 64, 20150910)

    def test_nested_params(self) -> None:
        """Test parameters may also be given as a `params` mapping."""
        config = RunConfig(
            value_date=date(2015, 9, 10),
            ois=Path("o.csv"),
            bonds=Path("b.csv"),
            params={"a_hat": 0.2},
            sigma_hat=0.01,
        )
        assert config.params == HWParams(a_hat=0.2, sigma_hat=0.01)

    @pytest.mark.parametrize(
        ("ttl", "match"),
        [((), "At least one ttl"), (("2w", "2w"), "Duplicated ttl"), (("2q",), "does not match")],
    )
    def test_invalid_ttl(self, ttl: tuple[str, ...], match: str) -> None:
        """Test ttl lists must be non-empty, unique and well formed."""
        with pytest.raises(ValidationError, match=match):
            RunConfig(value_date=date(2015, 9, 10), ois=Path("o"), bonds=Path("b"), ttl=ttl)

    def test_zero_ttl_is_allowed(self) -> None:
        """Test the liquid limit is a valid ttl."""
        config = RunConfig(
            value_date=date(2015, 9, 10), ois=Path("o"), bonds=Path("b"), ttl=("0d",)
        )
        assert config.ttl_years() == (("0d", 0.0),)

    def test_unknown_key(self) -> None:
        """Test misspelt keys are not silently ignored."""
        with pytest.raises(ValidationError):
            RunConfig(value_date=date(2015, 9, 10), ois=Path("o"), bonds=Path("b"), sead=1)

    def test_with_overrides(self, bnpp_config: RunConfig) -> None:
        """Test `None` overrides are ignored and others replace the field."""
        config = bnpp_config.with_overrides(seed=7, paths=None, format="json")
        assert (config.seed, config.paths, config.format) == (7, bnpp_config.paths, "json")
        assert bnpp_config.with_overrides(out=None) is bnpp_config

    def test_invalid_override(self, bnpp_config: RunConfig) -> None:
        """Test an invalid override is an input error."""
        with pytest.raises(InputError, match="Invalid override"):
            bnpp_config.with_overrides(paths=0)


class TestLoadConfig:
    """Test `load_config`."""

    def test_relative_paths(self, workdir: Path) -> None:
        """Test input and output paths are relative to the config file."""
        config = load_config(write_config(workdir, 'out = "results"\n'))
        assert config.ois == (workdir / "ois_eur_2015-09.csv").resolve()
        assert config.out == (workdir / "results").resolve()

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test a missing config file is an input error."""
        with pytest.raises(InputError, match="Cannot read config file"):
            load_config(tmp_path / "absent.toml")

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Test a syntax error is an input error."""
        path = tmp_path / "run.toml"
        path.write_text("value_date = = 1\n", encoding="utf-8")
        with pytest.raises(InputError, match="is not valid TOML"):
            load_config(path)

    def test_invalid_value(self, workdir: Path) -> None:
        """Test a value outside its domain is an input error."""
        with pytest.raises(InputError, match="Invalid config file"):
            load_config(write_config(workdir, "gamma_hat = 2.0\n"))

    def test_missing_input(self, workdir: Path) -> None:
        """Test a config naming a missing input file is an input error."""
        (workdir / "bnpp_bonds.csv").unlink()
        with pytest.raises(InputError, match="does not exist"):
            load_config(write_config(workdir, ""))

    def test_unknown_sample(self) -> None:
        """Test only the bundled samples can be asked for."""
        with pytest.raises(InputError, match="Unknown sample"):
            sample_config("unknown")
