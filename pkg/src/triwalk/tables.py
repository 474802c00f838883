"""Machine-readable output for the experiment tables.

CSV carries the configuration echo as leading ``#`` comment lines and
prints floats with 17 significant digits so that any numeric change in
the library shows up in a diff.  JSON wraps the same content as one
object with ``meta`` and ``rows``; undefined entries become null.
"""

import csv
import io
import json
import math
import sys

import numpy as np

from .analysis import SeriesRecord

LABEL_COLUMN = "label"


def format_value(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".16e")
    return str(x)


def _json_value(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return None if math.isnan(x) or math.isinf(x) else x
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, tuple):
        return [_json_value(v) for v in x]
    return x


def _column_names(records: list[SeriesRecord]) -> tuple[str, list[str]]:
    first = records[0]
    for rec in records[1:]:
        if rec.abscissa_name != first.abscissa_name or list(rec.values) != list(first.values):
            raise ValueError("records in one table must share the same columns")
    return first.abscissa_name, list(first.values)


def records_to_csv(records: list[SeriesRecord], meta: dict) -> str:
    abscissa_name, columns = _column_names(records)
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key} = {_meta_str(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([LABEL_COLUMN, abscissa_name, *columns])
    for rec in records:
        cols = [rec.column(c) for c in columns]
        for i, x in enumerate(rec.abscissa):
            writer.writerow(
                [rec.label, format_value(x), *(format_value(col[i]) for col in cols)]
            )
    return buf.getvalue()


def _meta_str(value) -> str:
    if isinstance(value, (float, np.floating)):
        return format_value(value)
    return str(value)


def records_to_json(records: list[SeriesRecord], meta: dict) -> str:
    abscissa_name, columns = _column_names(records)
    rows = []
    for rec in records:
        cols = [rec.column(c) for c in columns]
        for i, x in enumerate(rec.abscissa):
            row = {LABEL_COLUMN: rec.label, abscissa_name: _json_value(x)}
            for name, col in zip(columns, cols):
                row[name] = _json_value(col[i])
            rows.append(row)
    payload = {
        "meta": {k: _json_value(v) for k, v in meta.items()},
        "rows": rows,
    }
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def render(records: list[SeriesRecord], meta: dict, fmt: str) -> str:
    if fmt == "csv":
        return records_to_csv(records, meta)
    if fmt == "json":
        return records_to_json(records, meta)
    raise ValueError(f"unknown output format: {fmt!r}")


def write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
