"""
Reader for tabulated boundary data.

A table file lists one grid node per line:

    # x_1  x_2  value
    0.0  0.0  1.25
    0.0  0.5  1.10
    ...

Columns may be separated by whitespace or commas; blank lines, '#'
comments and a non-numeric header line are skipped. The nodes must cover
a full tensor grid, which is returned as per-axis coordinates plus a value
array for linear interpolation.
"""

import re
from typing import NamedTuple

import numpy as np

from errors import ConfigError


class TableRow(NamedTuple):
    line: int
    coords: tuple[float, ...]
    value: float


_SPLIT_RE = re.compile(r"[,\s]+")


def parse_table(text: str, source: str = "<table>") -> list[TableRow]:
    """Parse table text into rows; every row must have the same width."""
    text = text.replace("\r\n", "\n")
    rows: list[TableRow] = []
    width = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f for f in _SPLIT_RE.split(line) if f]
        try:
            numbers = [float(f) for f in fields]
        except ValueError:
            if not rows:
                # header line
                continue
            raise ConfigError(source, f"non-numeric entry in {raw.strip()!r}", line=lineno)
        if len(numbers) < 2:
            raise ConfigError(source, "a row needs at least one coordinate and a value", line=lineno)
        if width is None:
            width = len(numbers)
        elif len(numbers) != width:
            raise ConfigError(source, f"expected {width} columns, got {len(numbers)}", line=lineno)
        rows.append(TableRow(lineno, tuple(numbers[:-1]), numbers[-1]))
    return rows


def parse_table_file(filepath: str) -> list[TableRow]:
    """Read and parse a table file; UTF-8 first, latin-1 as the fallback."""
    try:
        with open(filepath, "rb") as f:
            raw = f.read()
    except OSError as exc:
        raise ConfigError(filepath, exc.strerror or str(exc)) from exc
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        text = raw.decode("latin-1")
    return parse_table(text, source=filepath)


def grid_from_rows(rows: list[TableRow], dims: int,
                   source: str = "<table>") -> tuple[tuple[np.ndarray, ...], np.ndarray]:
    """Arrange rows as a tensor grid with `dims` axes."""
    if not rows:
        raise ConfigError(source, "table is empty")
    if len(rows[0].coords) != dims:
        raise ConfigError(source, f"expected {dims} coordinate columns, got {len(rows[0].coords)}",
                          line=rows[0].line)
    coords = np.array([r.coords for r in rows])
    axes = tuple(np.unique(coords[:, d]) for d in range(dims))
    shape = tuple(len(a) for a in axes)
    if any(s < 2 for s in shape):
        raise ConfigError(source, "every axis needs at least two distinct nodes")
    values = np.full(shape, np.nan)
    for row, point in zip(rows, coords):
        index = tuple(int(np.searchsorted(axes[d], point[d])) for d in range(dims))
        if not np.isnan(values[index]):
            raise ConfigError(source, f"duplicate node {row.coords}", line=row.line)
        values[index] = row.value
    if np.isnan(values).any():
        raise ConfigError(source, f"nodes do not fill a {'x'.join(map(str, shape))} grid")
    return axes, values
