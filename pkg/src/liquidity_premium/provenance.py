"""Package version and the provenance block attached to every output."""

from __future__ import annotations

import warnings
from datetime import date
from typing import Literal

from pydantic import BaseModel, ConfigDict

TTL_DAY_COUNT_NOTE = "Act/365 calendar days from settlement"

_FALLBACK_VERSION = "0.0.0"
_FALLBACK_VERSION_TUPLE = (0, 0, 0)


class _VersionReader:
    """Read `__version__` and `__version_tuple__` from the generated `_version.py` on demand."""

    def __init__(self) -> None:
        self._warned = False

    def read(
        self, name: Literal["__version__", "__version_tuple__"]
    ) -> str | tuple[int | str, ...]:
        """Version information of the installed package.

        A source checkout has no `_version.py` (it is written at build time); then a warning is
        emitted once and placeholder values are returned.

        Args:
            name (Literal["__version__", "__version_tuple__"]): The attribute to read.

        Returns:
            str | tuple[int | str, ...]: The version information.

        Raises:
            ValueError: If `name` is not one of the two version attributes.
        """
        if name not in ("__version__", "__version_tuple__"):
            msg = f"Only `__version__` and `__version_tuple__` can be read, not `{name}`."
            raise ValueError(msg)

        try:
            from liquidity_premium._version import __version__, __version_tuple__
        except ImportError:
            if not self._warned:
                message = (
                    "Version information not available, using placeholder values. The "
                    "`_version.py` module is generated when the package is built; build or "
                    "install the package to get real values. This warning won't be emitted again."
                )
                warnings.warn(message, stacklevel=2)
                self._warned = True
            return _FALLBACK_VERSION if name == "__version__" else _FALLBACK_VERSION_TUPLE
        else:
            return __version__ if name == "__version__" else __version_tuple__


version_reader = _VersionReader()


class Provenance(BaseModel):
    """Where the numbers of an output come from."""

    model_config = ConfigDict(frozen=True)

    package_version: str
    ois_source: str
    """Label of the OIS quotes, e.g. `"bundled-approximate (not paper data)"`."""
    bonds_source: str
    """Label of the bond table, e.g. `"paper-table"`."""
    settlement_date: date
    ttl_day_count: str = TTL_DAY_COUNT_NOTE
    """How ttl labels are turned into year fractions."""


def build_provenance(ois_source: str, bonds_source: str, settlement_date: date) -> Provenance:
    """Provenance stamped with the running package version."""
    return Provenance(
        package_version=str(version_reader.read("__version__")),
        ois_source=ois_source,
        bonds_source=bonds_source,
        settlement_date=settlement_date,
    )
