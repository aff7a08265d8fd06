# system/io.py
"""
Result files: CSV with '#'-prefixed metadata lines and %.17g numbers, and sorted-key
JSON reports.
"""

import csv
import json
import pathlib
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from .config import TOOLKIT_VERSION

FLOAT_FORMAT = "%.17g"


@dataclass
class CsvTable:
    metadata: Dict[str, str] = field(default_factory=dict)
    columns: List[str] = field(default_factory=list)
    rows: List[List[str]] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise KeyError(f"column {name!r} not in {self.columns}")
        k = self.columns.index(name)
        return np.array([float(r[k]) for r in self.rows])

    def text_column(self, name: str) -> List[str]:
        if name not in self.columns:
            raise KeyError(f"column {name!r} not in {self.columns}")
        k = self.columns.index(name)
        return [r[k] for r in self.rows]


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return FLOAT_FORMAT % float(value)


def write_csv(path: str, columns: Sequence[str], rows: Sequence[Sequence[Any]],
              metadata: Dict[str, Any]) -> pathlib.Path:
    """metadata lines come first as '# key: value'; toolkit_version is always present."""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {"toolkit_version": TOOLKIT_VERSION}
    meta.update({k: str(v) for k, v in metadata.items()})
    with open(path, "w", newline="", encoding="utf-8") as f:
        for key in sorted(meta):
            f.write(f"# {key}: {meta[key]}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(list(columns))
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def read_csv(path: str) -> CsvTable:
    table = CsvTable()
    with open(path, newline="", encoding="utf-8") as f:
        data_lines = []
        for line in f:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                table.metadata[key.strip()] = value.strip()
            elif line.strip():
                data_lines.append(line)
    reader = csv.reader(data_lines)
    try:
        table.columns = next(reader)
    except StopIteration:
        raise ValueError(f"{path}: no header row") from None
    for k, row in enumerate(reader, start=1):
        if len(row) != len(table.columns):
            raise ValueError(f"{path}: row {k} has {len(row)} cells, header has {len(table.columns)}")
        table.rows.append(row)
    return table


def write_json(path: str, payload: Dict[str, Any]) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = dict(payload)
    body.setdefault("toolkit_version", TOOLKIT_VERSION)
    path.write_text(json.dumps(body, indent=2, sort_keys=True, allow_nan=False) + "\n", encoding="utf-8")
    return path

