"""Emit tables as comma separated files."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import pandas as pd

from liquidity_premium.emitters.base import BaseEmitter, Table

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)

PROVENANCE_FILE = "provenance.json"


class CsvEmitter(BaseEmitter):
    """Write a header row then one line per row; ISO dates and `.` decimals.

    Provenance labels are repeated in `ois_source` and `bonds_source` columns, and the full
    provenance goes to a `provenance.json` sidecar in the same directory.
    """

    suffix = ".csv"

    def emit_with(self, table: Table, directory: Path) -> Path:
        """Write `table` and its provenance sidecar."""
        directory.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame(list(table.rows))
        if table.provenance is not None:
            frame = frame.assign(
                ois_source=table.provenance.ois_source,
                bonds_source=table.provenance.bonds_source,
            )
            (directory / PROVENANCE_FILE).write_text(
                table.provenance.model_dump_json(indent=2), encoding="utf-8"
            )
        path = self.path_for(table, directory)
        frame.to_csv(path, index=False, lineterminator="\n")
        logger.info(f"Wrote {len(frame)} rows to {path}")
        return path
