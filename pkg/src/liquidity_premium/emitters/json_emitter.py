"""Emit tables as JSON documents."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from pydantic import TypeAdapter

from liquidity_premium.emitters.base import BaseEmitter, Table

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)

_TABLE_ADAPTER = TypeAdapter(Table)


class JsonEmitter(BaseEmitter):
    """Write `{"name", "rows", "provenance", "meta"}` with two-space indentation."""

    suffix = ".json"

    def emit_with(self, table: Table, directory: Path) -> Path:
        """Write `table` as one JSON document."""
        directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(table, directory)
        path.write_bytes(_TABLE_ADAPTER.dump_json(table, indent=2) + b"\n")
        logger.info(f"Wrote {len(table.rows)} rows to {path}")
        return path
