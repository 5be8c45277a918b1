"""
Tabular output: CSV with a header row, or JSON as a list of row objects.
Floats are written with repr, the shortest string that reads back to the
same double.
"""

import csv
import io
import json
import math
import os
import sys
from typing import Any, Sequence


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "dtype"):
        return format_cell(value.item())
    return str(value)


def _json_cell(value: Any) -> Any:
    if hasattr(value, "dtype"):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_rows(columns: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str) -> str:
    if fmt == "json":
        records = [{c: _json_cell(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def write_text(text: str, path: str = ""):
    """Write to `path`, or to stdout when it is empty."""
    if not path:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def write_rows(columns: Sequence[str], rows: Sequence[Sequence[Any]], path: str = "",
               fmt: str = "csv"):
    write_text(render_rows(columns, rows, fmt), path)


def profile_path(output_path: str, fallback_dir: str, command: str) -> str:
    """<output stem>.profile.json, or <command>.profile.json in fallback_dir for stdout runs."""
    if output_path:
        stem, _ = os.path.splitext(output_path)
        return stem + ".profile.json"
    return os.path.join(fallback_dir, f"{command}.profile.json")


def write_profile(records: list[dict], path: str):
    write_text(json.dumps(records, indent=2, sort_keys=True) + "\n", path)
