from typing import Literal

from liquidity_premium.emitters.base import BaseEmitter, Table
from liquidity_premium.emitters.csv_emitter import PROVENANCE_FILE, CsvEmitter
from liquidity_premium.emitters.json_emitter import JsonEmitter


def emitter_for(output_format: Literal["csv", "json"]) -> BaseEmitter:
    """Emitter writing `output_format`.

    Raises:
        ValueError: If the format is unknown.
    """
    if output_format == "csv":
        return CsvEmitter()
    if output_format == "json":
        return JsonEmitter()
    msg = f"Unknown output format {output_format!r}; use `csv` or `json`."
    raise ValueError(msg)


__all__ = ["PROVENANCE_FILE", "BaseEmitter", "CsvEmitter", "JsonEmitter", "Table", "emitter_for"]
