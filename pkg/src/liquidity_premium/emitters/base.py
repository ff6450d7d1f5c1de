"""Base for all emitters.

An emitter writes a `Table` to a directory in one file format. Subclasses override `emit_with`;
`emitter_for` picks the one matching a configured format.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, ClassVar

from pydantic import BaseModel, ConfigDict

from liquidity_premium.provenance import Provenance


class Table(BaseModel):
    """Named rows ready to be written; column names carry their units."""

    model_config = ConfigDict(frozen=True)

    name: str
    """File stem, e.g. `"reports"`."""
    rows: tuple[dict[str, Any], ...]
    """Rows in output order; all rows share the same keys."""
    provenance: Provenance | None = None
    meta: dict[str, Any] = {}
    """Run level values that do not fit in rows, e.g. the Monte-Carlo seed."""


class BaseEmitter(BaseModel):
    """Write nothing; subclasses implement a format."""

    suffix: ClassVar[str] = ""

    def path_for(self, table: Table, directory: Path) -> Path:
        """File the table is written to."""
        return directory / f"{table.name}{self.suffix}"

    def emit_with(self, table: Table, directory: Path) -> Path:
        """Raise NotImplementedError as the base emitter has no format."""
        msg = "You should implement formats in subclasses of BaseEmitter."
        raise NotImplementedError(msg)
