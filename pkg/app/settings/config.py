"""
Run configuration loaded from a JSON file and command-line overrides.

Defaults < JSON file < command line. Every section is validated when the
config is built and every error names the offending field path.
"""

import copy
import json
import os
from contextlib import contextmanager
from typing import Any

import numpy as np

from errors import ConfigError, LauricellaError
from hyperfun.lemmas import lemma1_closed_form
from hyperfun.params import EvalOptions, FAMethod, FAParams, Lemma2Params
from kernel.domain import DomainSpec
from neumann.data import (BoundaryDatum, algebraic_datum, combine_data, compact_datum,
                          gaussian_datum, tabulated_datum_from_file, zero_datum)
from neumann.quadrature import QuadratureSpec
from settings.suites import SUITES

OUTPUT_DIR_ENV = "LAURICELLA_OUTPUT_DIR"

COMMANDS = ("eval-fa", "eval-kernel", "solve", "flux", "verify", "lemma1", "lemma2")
FORMATS = ("csv", "json")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

DEFAULT_CONFIG = {
    "command": "verify",
    "domain": {"m": 3, "n": 1, "alpha": [0.25]},
    "eval": {"rel_tol": 1e-13, "max_total_degree": 2000, "quadrature_order": 24,
             "series_radius": 0.9},
    "quadrature": {"transform": "rational", "base_order": 8, "refinement_levels": 1,
                   "target_rel_tol": 1e-3, "tail_panels": 6},
    "data": [],
    "points": [],
    "fa": {"a": 0.75, "b": [0.25], "c": [0.5], "x": [[0.0]], "method": None},
    "kernel": {"x": [[1.0, 0.0, 0.0]], "xi": [[2.0, 1.0, 1.0]]},
    "flux": {"face": 1, "points": []},
    "lemma1": {"a": 2.0, "b": [0.5], "c": [1.0], "z0": [1.0], "z_slope": None,
               "eps": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]},
    "lemma2": {"p": [1.0], "q": [2.0], "r": [1.0], "s": 1.0, "t": 0.0,
               "method": "nested", "budget": 200, "transform": None, "seed": 0},
    "verify": {"suite": "default", "seed": 42, "tolerances": {}},
    "output": {"path": "", "format": "csv"},
    "jobs": 1,
    "profile": False,
    "logging": {"level": "WARNING"},
}

# sections whose keys are free-form
_OPEN_SECTIONS = {"verify.tolerances"}


def get_output_dir() -> str:
    """Directory relative output paths resolve against."""
    return os.environ.get(OUTPUT_DIR_ENV) or os.getcwd()


def resolve_output_path(path: str) -> str:
    if not path or os.path.isabs(path):
        return path
    return os.path.join(get_output_dir(), path)


@contextmanager
def at_path(path: str):
    """Re-raise validation failures inside the block as ConfigError at `path`."""
    try:
        yield
    except ConfigError:
        raise
    except (LauricellaError, ValueError, TypeError, KeyError, IndexError) as exc:
        raise ConfigError(path, str(exc) or exc.__class__.__name__) from exc


# ── Section builders (shared with the verification scenarios) ──


def build_domain(section: dict, path: str = "domain") -> DomainSpec:
    with at_path(path):
        return DomainSpec(section["m"], section["n"], tuple(section["alpha"]))


def build_eval_options(section: dict, path: str = "eval") -> EvalOptions:
    with at_path(path):
        return EvalOptions(**section)


def build_quadrature(section: dict, path: str = "quadrature") -> QuadratureSpec:
    with at_path(path):
        return QuadratureSpec(**section)


def _face(entry: dict, spec: DomainSpec, path: str) -> int:
    face = entry.get("face")
    if not isinstance(face, int) or not 1 <= face <= spec.n:
        raise ConfigError(f"{path}.face", f"must be an integer in 1..{spec.n}, got {face!r}")
    return face - 1


def build_datum(entry: dict, spec: DomainSpec, path: str = "data[0]") -> BoundaryDatum:
    """One boundary datum from its config entry ("face" is 1-based)."""
    if not isinstance(entry, dict):
        raise ConfigError(path, f"expected an object, got {type(entry).__name__}")
    kind = entry.get("kind", "algebraic")
    face = _face(entry, spec, path)
    amplitude = entry.get("amplitude", 1.0)
    eps = entry.get("eps", 0.5)
    with at_path(path):
        if kind == "zero":
            return zero_datum(face, spec)
        if kind == "algebraic":
            return algebraic_datum(face, spec, amplitude, eps)
        if kind == "gaussian":
            return gaussian_datum(face, spec, entry.get("center", [0.0] * (spec.m - 1)),
                                  entry.get("width", 1.0), amplitude, eps)
        if kind == "compact":
            return compact_datum(face, spec, entry.get("center", [0.0] * (spec.m - 1)),
                                 entry.get("radius", 1.0), amplitude, eps)
        if kind == "tabulated":
            for key in ("path", "bound_c", "bound_eps"):
                if key not in entry:
                    raise ConfigError(f"{path}.{key}", "required for tabulated data")
            try:
                return tabulated_datum_from_file(face, spec, entry["path"],
                                                 entry["bound_c"], entry["bound_eps"])
            except ConfigError as exc:
                raise ConfigError(f"{path}.path", str(exc), line=exc.line) from exc
        if kind == "combined":
            terms = []
            for i, term in enumerate(entry.get("terms", [])):
                sub = dict(term, face=entry["face"])
                terms.append((term.get("weight", 1.0),
                              build_datum(sub, spec, f"{path}.terms[{i}]")))
            return combine_data(terms)
    raise ConfigError(f"{path}.kind", f"unknown datum kind {kind!r}")


def build_data(entries: list, spec: DomainSpec, path: str = "data") -> list[BoundaryDatum]:
    if not isinstance(entries, list):
        raise ConfigError(path, "expected a list of boundary data")
    return [build_datum(e, spec, f"{path}[{i}]") for i, e in enumerate(entries)]


def build_points(rows: Any, width: int, path: str, allow_empty: bool = False) -> np.ndarray:
    with at_path(path):
        pts = np.asarray(rows, dtype=float)
    if pts.size == 0:
        if allow_empty:
            return np.empty((0, width))
        raise ConfigError(path, "at least one point is required")
    pts = np.atleast_2d(pts)
    if pts.ndim != 2 or pts.shape[1] != width:
        raise ConfigError(path, f"points need {width} coordinates, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ConfigError(path, "coordinates must be finite")
    return pts


# ── The run config ─────────────────────────────────────────────


def _check_keys(raw: dict, defaults: dict, prefix: str = ""):
    for key, value in raw.items():
        where = f"{prefix}{key}"
        if key not in defaults:
            raise ConfigError(where, "unknown key")
        if isinstance(defaults[key], dict) and where not in _OPEN_SECTIONS:
            if not isinstance(value, dict):
                raise ConfigError(where, f"expected an object, got {type(value).__name__}")
            _check_keys(value, defaults[key], where + ".")


def load_json(path: str) -> dict:
    """Read a JSON config document; syntax errors carry their line number."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(path, exc.msg, line=exc.lineno) from exc
    except OSError as exc:
        raise ConfigError(path, exc.strerror or str(exc)) from exc
    if not isinstance(raw, dict):
        raise ConfigError(path, "top level must be a JSON object")
    return raw


class RunConfig:
    """Validated settings for one CLI run."""

    def __init__(self, path: str = "", overrides: dict[str, Any] | None = None,
                 raw: dict | None = None):
        self.path = path
        document = dict(raw or {})
        if path:
            document = _deep_merge(document, load_json(path))
        _check_keys(document, DEFAULT_CONFIG)
        self._data = _deep_merge(copy.deepcopy(DEFAULT_CONFIG), document)
        for dotted, value in (overrides or {}).items():
            if value is not None:
                self.set(dotted, value)
        self.validate()

    def get(self, dotted: str, default: Any = None) -> Any:
        node: Any = self._data
        for part in dotted.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def set(self, dotted: str, value: Any):
        parts = dotted.split(".")
        node = self._data
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = value

    def as_dict(self) -> dict:
        return json.loads(json.dumps(self._data))

    # ── Validation ─────────────────────────────────────────────

    def validate(self):
        command = self.command
        if command not in COMMANDS:
            raise ConfigError("command", f"must be one of {', '.join(COMMANDS)}, got {command!r}")
        if self.output_format not in FORMATS:
            raise ConfigError("output.format", f"must be csv or json, got {self.output_format!r}")
        if self.log_level not in LOG_LEVELS:
            raise ConfigError("logging.level", f"must be one of {', '.join(LOG_LEVELS)}")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError("jobs", f"must be a positive integer, got {self.jobs!r}")
        self.eval_options = build_eval_options(self._data["eval"])

        if command == "eval-fa":
            self._validate_fa()
        elif command == "eval-kernel":
            self.domain = build_domain(self._data["domain"])
            self.kernel_x = build_points(self.get("kernel.x"), self.domain.m, "kernel.x")
            self.kernel_xi = build_points(self.get("kernel.xi"), self.domain.m, "kernel.xi")
            if len(self.kernel_xi) not in (1, len(self.kernel_x)):
                raise ConfigError("kernel.xi", "give one ξ or one per x point")
            for name, rows in (("kernel.x", self.kernel_x), ("kernel.xi", self.kernel_xi)):
                for i, row in enumerate(rows):
                    with at_path(f"{name}[{i}]"):
                        self.domain.point(row)
        elif command in ("solve", "flux"):
            self.domain = build_domain(self._data["domain"])
            self.quadrature = build_quadrature(self._data["quadrature"])
            self.data = build_data(self._data["data"], self.domain)
            key = "points" if command == "solve" else "flux.points"
            self.points = build_points(self.get(key), self.domain.m, key)
            for i, row in enumerate(self.points):
                with at_path(f"{key}[{i}]"):
                    self.domain.interior_point(row)
            if command == "flux":
                self.flux_face = _face(self._data["flux"], self.domain, "flux")
        elif command == "verify":
            self._validate_verify()
        elif command == "lemma1":
            self._validate_lemma1()
        else:
            self._validate_lemma2()

    def _validate_fa(self):
        section = self._data["fa"]
        with at_path("fa"):
            self.fa_params = FAParams(section["a"], tuple(section["b"]), tuple(section["c"]))
        self.fa_points = build_points(section["x"], self.fa_params.n, "fa.x")
        method = section.get("method")
        with at_path("fa.method"):
            self.fa_method = None if method in (None, "auto") else FAMethod(method)

    def _validate_verify(self):
        if self.suite not in SUITES:
            raise ConfigError("verify.suite", f"unknown suite {self.suite!r}; "
                              f"choose from {', '.join(sorted(SUITES))}")
        if not isinstance(self.seed, int):
            raise ConfigError("verify.seed", f"must be an integer, got {self.seed!r}")
        for name, value in self.tolerances.items():
            if not isinstance(value, (int, float)) or not value > 0:
                raise ConfigError(f"verify.tolerances.{name}", f"must be a positive number, got {value!r}")

    def _validate_lemma1(self):
        section = self._data["lemma1"]
        n = len(section.get("b") or [])
        for key in ("c", "z0") + (("z_slope",) if section.get("z_slope") is not None else ()):
            if len(section.get(key) or []) != n:
                raise ConfigError(f"lemma1.{key}", f"needs {n} entries to match lemma1.b")
        eps = section.get("eps") or []
        if len(eps) < 2 or any(not e > 0 for e in eps):
            raise ConfigError("lemma1.eps", "needs at least two positive values")
        with at_path("lemma1"):
            lemma1_closed_form(section["a"], section["b"], section["c"], section["z0"])

    def _validate_lemma2(self):
        section = self._data["lemma2"]
        with at_path("lemma2"):
            self.lemma2_params = Lemma2Params(tuple(section["p"]), tuple(section["q"]),
                                              tuple(section["r"]), section["s"], section["t"])
        if section["method"] not in ("nested", "qmc"):
            raise ConfigError("lemma2.method", f"must be nested or qmc, got {section['method']!r}")
        if section["transform"] not in (None, "rational", "tangent"):
            raise ConfigError("lemma2.transform", f"must be rational or tangent, got {section['transform']!r}")
        if not isinstance(section["budget"], int) or section["budget"] < 2:
            raise ConfigError("lemma2.budget", f"must be an integer >= 2, got {section['budget']!r}")

    # ── Typed accessors ────────────────────────────────────────

    @property
    def command(self) -> str:
        return self._data["command"]

    @property
    def lemma1(self) -> dict:
        return self._data["lemma1"]

    @property
    def lemma2(self) -> dict:
        return self._data["lemma2"]

    @property
    def suite(self) -> str:
        return self.get("verify.suite", "default")

    @property
    def seed(self) -> int:
        return self.get("verify.seed", 42)

    @property
    def tolerances(self) -> dict[str, float]:
        return self.get("verify.tolerances") or {}

    @property
    def output_path(self) -> str:
        return resolve_output_path(self.get("output.path", ""))

    @property
    def output_format(self) -> str:
        return self.get("output.format", "csv")

    @property
    def jobs(self) -> int:
        return self._data.get("jobs", 1)

    @property
    def profile(self) -> bool:
        return bool(self._data.get("profile", False))

    @property
    def log_level(self) -> str:
        return str(self.get("logging.level", "WARNING")).upper()


def _deep_merge(defaults: dict, overrides: dict) -> dict:
    """Recursively merge overrides into defaults."""
    result = dict(defaults)
    for k, v in overrides.items():
        if k in result and isinstance(result[k], dict) and isinstance(v, dict):
            result[k] = _deep_merge(result[k], v)
        else:
            result[k] = v
    return result
