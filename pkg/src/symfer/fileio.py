"""CSV and JSON readers/writers for clouds, series and reports.

Floats are written with 17 significant digits so a write/read round trip is
bit-faithful for float64.  Readers reject NaN/Inf and report the offending
line.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .benchmark import SweepReport
from .embedding import TimeSeries
from .groups import PointCloud
from .orbit import CostReport

__all__ = [
    "ParseError",
    "fmt_float",
    "write_cloud_csv",
    "read_cloud_csv",
    "write_timeseries_csv",
    "read_timeseries_csv",
    "write_cost_report_csv",
    "write_distance_table_csv",
    "write_sweep_csv",
    "write_trace_csv",
]


class ParseError(Exception):
    """Malformed or non-finite input data; message carries file and line."""


def fmt_float(value: float) -> str:
    """17 significant digits: enough to reproduce any float64 exactly."""
    return format(float(value), ".17g")


def write_cloud_csv(path: str | Path, cloud: PointCloud) -> None:
    lines = ["x,y"]
    lines.extend(f"{fmt_float(x)},{fmt_float(y)}" for x, y in cloud.points)
    Path(path).write_text("\n".join(lines) + "\n")


def read_cloud_csv(path: str | Path) -> PointCloud:
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    lines = raw.splitlines()
    if not lines or lines[0].strip() != "x,y":
        raise ParseError(f"{path}:1: expected header 'x,y'")
    rows: list[tuple[float, float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected two comma-separated values")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: could not parse coordinates {line!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError(f"{path}:{lineno}: non-finite coordinate")
        rows.append((x, y))
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return PointCloud(np.array(rows))


def write_timeseries_csv(path: str | Path, series: TimeSeries, column: str = "value") -> None:
    lines = [column]
    lines.extend(fmt_float(v) for v in series.samples)
    Path(path).write_text("\n".join(lines) + "\n")


def read_timeseries_csv(path: str | Path, column: str | None = None) -> TimeSeries:
    """Read one column of a CSV as a time series.

    A single-column file needs no ``column`` argument; multi-column files
    require the header name of the column to extract.
    """
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    lines = raw.splitlines()
    if not lines:
        raise ParseError(f"{path}: empty file")
    header = [h.strip() for h in lines[0].split(",")]
    if column is None:
        if len(header) != 1:
            raise ParseError(
                f"{path}:1: {len(header)} columns present, select one of: {', '.join(header)}"
            )
        index = 0
    else:
        if column not in header:
            raise ParseError(f"{path}:1: no column named {column!r} (have: {', '.join(header)})")
        index = header.index(column)
    values: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise ParseError(f"{path}:{lineno}: expected {len(header)} values")
        try:
            v = float(parts[index])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: could not parse value {parts[index]!r}") from None
        if not math.isfinite(v):
            raise ParseError(f"{path}:{lineno}: non-finite value")
        values.append(v)
    if len(values) < 4:
        raise ParseError(f"{path}: need at least 4 samples, found {len(values)}")
    return TimeSeries(np.array(values))


def write_cost_report_csv(path: str | Path, report: CostReport) -> None:
    """Record stream (element label, squared distance) for one candidate."""
    lines = ["element,squared_distance"]
    lines.extend(f"{g.label},{fmt_float(sq)}" for g, sq in report.per_element)
    Path(path).write_text("\n".join(lines) + "\n")


def write_distance_table_csv(path: str | Path, rows: list[tuple[int, str, float]]) -> None:
    """Element-wise distance table: (candidate n, element label, distance)."""
    lines = ["candidate_n,element,distance"]
    lines.extend(f"{n},{label},{fmt_float(dist)}" for n, label, dist in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def write_sweep_csv(path: str | Path, report: SweepReport) -> None:
    """Per-threshold acceptance flags (one column per candidate) and outcome."""
    header = ["upsilon"] + [f"accept_{n}" for n in report.candidates] + ["classification"]
    lines = [",".join(header)]
    for upsilon, accepted, outcome in zip(
        report.grid, report.accepted_sets, report.classifications
    ):
        flags = ["1" if n in accepted else "0" for n in report.candidates]
        lines.append(",".join([fmt_float(upsilon)] + flags + [str(outcome)]))
    Path(path).write_text("\n".join(lines) + "\n")


def write_trace_csv(path: str | Path, trace: list[int]) -> None:
    Path(path).write_text("\n".join(["n"] + [str(n) for n in trace]) + "\n")
