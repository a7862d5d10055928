"""Reading one-value-per-line input and rendering reports as JSON or CSV.

Both renderings format floats with ``repr`` (shortest round-trip), so the
same report gives identical numbers in either format and identical bytes
across runs.
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import InputParseError, MalformedValue

SCHEMA_VERSION = 1


def parse_values(text: str, column: int | None = None) -> list[float]:
    """Numbers from ``text``: one per line, ``#`` comments and blank lines skipped.

    With ``column`` (1-based) each line is split on commas and that field used.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if column is not None:
            fields = line.split(",")
            if column > len(fields):
                raise InputParseError(lineno, line)
            line = fields[column - 1].strip()
        try:
            x = float(line)
        except ValueError:
            raise InputParseError(lineno, line) from None
        if not math.isfinite(x):
            raise InputParseError(lineno, line)
        out.append(x)
    return out


def read_values(path: str, column: int | None = None) -> list[float]:
    """Read values from a file path, or stdin when ``path`` is ``-``."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_values(text, column)


def parse_inline(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise MalformedValue(f"--data expects comma-separated numbers, got {text!r}", "--data") from None
    if not all(math.isfinite(v) for v in vals):
        raise MalformedValue("--data values must be finite", "--data")
    return vals


def jsonable(obj: Any) -> Any:
    """Recursively replace infinities with the strings ``"inf"``/``"-inf"``."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def fmt(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    if x is None:
        return ""
    return str(x)


@dataclass
class Table:
    name: str
    header: Sequence[str]
    rows: list[Sequence[Any]] = field(default_factory=list)


@dataclass
class Report:
    command: str
    params: dict
    results: dict
    tables: list[Table]

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "results": self.results,
        }
        return json.dumps(jsonable(doc), indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for k, t in enumerate(self.tables):
            if k:
                buf.write("\n")
            buf.write(f"# {t.name}\n")
            w.writerow(t.header)
            for row in t.rows:
                w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def render(self, fmt_name: str) -> str:
        return self.to_csv() if fmt_name == "csv" else self.to_json()


def read_csv_tables(text: str) -> dict[str, list[dict[str, str]]]:
    """Parse the output of :meth:`Report.to_csv` back into named tables."""
    tables: dict[str, list[dict[str, str]]] = {}
    for block in text.strip("\n").split("\n\n"):
        lines = block.splitlines()
        name = lines[0].removeprefix("# ").strip()
        tables[name] = list(csv.DictReader(lines[1:]))
    return tables


def rows_from(records: Iterable[dict], keys: Sequence[str]) -> list[list[Any]]:
    return [[r[k] for k in keys] for r in records]
