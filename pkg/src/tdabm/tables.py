"""Small immutable table used for summary outputs and their CSV export."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import ValidationError


@dataclass(frozen=True)
class Table:
    """Rectangular table: named columns, tuple rows.

    Floats are exported with full repr precision so a written table can be
    re-read without loss.
    """

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValidationError(
                    f"row has {len(row)} cells, expected {len(self.columns)}"
                )

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise ValidationError(
                f"no column {name!r}, have {list(self.columns)}"
            )
        j = self.columns.index(name)
        return [row[j] for row in self.rows]

    def as_dict(self) -> dict[Any, dict[str, Any]]:
        """Rows keyed by their first-column value."""
        return {
            row[0]: dict(zip(self.columns[1:], row[1:])) for row in self.rows
        }

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([repr(c) if isinstance(c, float) else c for c in row])
        return buf.getvalue()

    def to_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv_text(), encoding="utf-8")
