"""
Check reports: one record per verification check, written as JSON lines
and summarised as a plain-text table.
"""

import json
import math
from typing import Any, NamedTuple, Sequence

import numpy as np


class CheckReport(NamedTuple):
    name: str
    observed: float
    expected: float
    tolerance: float
    passed: bool
    runtime: float = 0.0
    seed: int | None = None
    extended: bool = False
    details: dict | None = None


def within(observed: float, expected: float, tolerance: float) -> bool:
    """|observed - expected| <= tolerance · max(1, |expected|); NaN never passes."""
    if not (math.isfinite(observed) and math.isfinite(expected)):
        return False
    return abs(observed - expected) <= tolerance * max(1.0, abs(expected))


def make_report(name: str, observed: float, expected: float, tolerance: float,
                seed: int | None = None, extended: bool = False,
                details: dict | None = None) -> CheckReport:
    observed = float(observed)
    expected = float(expected)
    return CheckReport(name, observed, expected, float(tolerance),
                       within(observed, expected, tolerance),
                       seed=seed, extended=extended, details=details)


def score_report(name: str, scores: dict[str, float], seed: int | None = None,
                 extended: bool = False, details: dict | None = None) -> CheckReport:
    """
    Aggregate several metric/tolerance ratios into one report: the worst
    ratio is the observed value, checked against 0 with tolerance 1.
    """
    worst = max(scores.values()) if scores else 0.0
    merged = {"scores": dict(scores)}
    if details:
        merged.update(details)
    return make_report(name, worst, 0.0, 1.0, seed=seed, extended=extended, details=merged)


def failed_report(name: str, message: str, tolerance: float = math.nan,
                  seed: int | None = None, extended: bool = False) -> CheckReport:
    return CheckReport(name, math.nan, math.nan, tolerance, False,
                       seed=seed, extended=extended, details={"error": message})


# ── Serialisation ──────────────────────────────────────────────


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    return value


def report_dict(report: CheckReport, include_runtime: bool = False) -> dict:
    out = _plain(report._asdict())
    if not include_runtime:
        out.pop("runtime")
    if out["details"] is None:
        out.pop("details")
    return out


def to_jsonl(reports: Sequence[CheckReport], include_runtime: bool = False) -> str:
    """One JSON object per line, keys sorted; stable across runs without runtime."""
    lines = [json.dumps(report_dict(r, include_runtime), sort_keys=True) for r in reports]
    return "\n".join(lines) + ("\n" if lines else "")


def summary_table(reports: Sequence[CheckReport], include_runtime: bool = False) -> str:
    header = ["check", "observed", "expected", "tol", "result"]
    if include_runtime:
        header.append("seconds")
    rows = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        if r.extended:
            status += " (extended)"
        row = [r.name, f"{r.observed:.6g}", f"{r.expected:.6g}", f"{r.tolerance:.3g}", status]
        if include_runtime:
            row.append(f"{r.runtime:.2f}")
        rows.append(row)
    widths = [max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i])
              for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows]
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports)} checks, {failed} failed")
    return "\n".join(lines) + "\n"
