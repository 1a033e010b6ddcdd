"""CSV ingestion and deterministic CSV/JSON emission."""

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, ParseError

MISSING = "NA"


@dataclass(frozen=True)
class Table:
    names: tuple
    columns: dict
    path: str | None = None

    @property
    def n_rows(self):
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def select(self, names, allow_missing=False):
        """Stack the named columns into an ``(n, k)`` float array."""
        unknown = [c for c in names if c not in self.columns]
        if unknown:
            raise InvalidInputError(
                f"{self.path or 'table'}: unknown column(s) {', '.join(unknown)}; "
                f"available: {', '.join(self.names)}"
            )
        if not names:
            raise InvalidInputError("column selection is empty")
        if not allow_missing:
            for c in names:
                if np.isnan(self.columns[c]).any():
                    row = int(np.flatnonzero(np.isnan(self.columns[c]))[0])
                    raise InvalidInputError(
                        f"{self.path or 'table'}: column {c!r} has a missing value "
                        f"at line {row + 2}"
                    )
        return np.column_stack([self.columns[c] for c in names])


def load_table(path, format="csv"):
    """Read a headed CSV of numeric columns; ``NA`` cells become NaN."""
    if format != "csv":
        raise ParseError(f"unsupported input format {format!r}", path=path)
    path = Path(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or not any(cell.strip() for cell in rows[0]):
        raise ParseError("missing header", path=path, line=1)
    names = tuple(cell.strip() for cell in rows[0])
    if any(not name for name in names):
        raise ParseError("empty column name in header", path=path, line=1)
    if len(set(names)) != len(names):
        raise ParseError("duplicate column names in header", path=path, line=1)

    values = [[] for _ in names]
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(names):
            raise ParseError(
                f"expected {len(names)} fields, found {len(row)}", path=path, line=lineno
            )
        for j, cell in enumerate(row):
            cell = cell.strip()
            if cell == MISSING:
                values[j].append(math.nan)
                continue
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"cannot parse {cell!r} as a number",
                                 path=path, line=lineno, column=names[j]) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite value {cell!r}",
                                 path=path, line=lineno, column=names[j])
            values[j].append(v)

    columns = {}
    for name, vals in zip(names, values):
        arr = np.array(vals, dtype=np.float64)
        arr.flags.writeable = False
        columns[name] = arr
    return Table(names, columns, str(path))


def fmt(value):
    """Text form of one output cell; floats keep 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return MISSING
        return format(float(value), ".17g")
    return str(value)


def render_csv(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return None if math.isnan(value) else float(value)
    return value


def render_json(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False) + "\n"


def write_atomic(outputs):
    """Write ``{path: text}`` so that either every file appears or none does."""
    staged = []
    try:
        for path, text in outputs.items():
            path = Path(path)
            fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
            staged.append((tmp, path))
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
        for tmp, path in staged:
            os.replace(tmp, path)
    except BaseException:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise
