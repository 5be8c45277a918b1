"""
Command-line front end.

    main.py eval-fa --a 0.75 --b 0.25 --c 0.5 --x 0.3
    main.py solve --config run.json --output field.csv --jobs 4
    main.py verify --suite default --seed 42 --output report.jsonl

Exit status: 0 on success, 1 for an invalid configuration, 2 when any
point or check failed numerically.
"""

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np

from cli.output import profile_path, write_profile, write_rows, write_text
from errors import ConfigError, LauricellaError
from hyperfun.lauricella import lauricella_fa
from hyperfun.lemmas import lemma1_closed_form, lemma2_closed_form
from kernel.fundamental import grad_xi_q, q
from neumann.solver import NeumannSolution, solve_u
from settings.config import RunConfig, get_output_dir
from verify.lemma_checks import lemma1_sequence, lemma2_numeric
from verify.report import summary_table, to_jsonl
from verify.suite import run_suite, suite_passed

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2


# ── Argument parsing ───────────────────────────────────────────


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc.msg}") from None


# flag destination -> dotted config key
_COMMON = {
    "output": "output.path",
    "format": "output.format",
    "jobs": "jobs",
    "profile": "profile",
    "log_level": "logging.level",
}
_DOMAIN = {"m": "domain.m", "n": "domain.n", "alpha": "domain.alpha"}
_EVAL = {
    "rel_tol": "eval.rel_tol",
    "max_total_degree": "eval.max_total_degree",
    "quadrature_order": "eval.quadrature_order",
}
_QUAD = {
    "transform": "quadrature.transform",
    "base_order": "quadrature.base_order",
    "levels": "quadrature.refinement_levels",
    "target_rel_tol": "quadrature.target_rel_tol",
    "data": "data",
}
_SECTIONS = {
    "eval-fa": {"a": "fa.a", "b": "fa.b", "c": "fa.c", "x": "fa.x", "method": "fa.method"},
    "eval-kernel": {**_DOMAIN, "x": "kernel.x", "xi": "kernel.xi"},
    "solve": {**_DOMAIN, **_QUAD, "points": "points"},
    "flux": {**_DOMAIN, **_QUAD, "points": "flux.points", "face": "flux.face"},
    "verify": {"suite": "verify.suite", "seed": "verify.seed"},
    "lemma1": {"a": "lemma1.a", "b": "lemma1.b", "c": "lemma1.c", "z0": "lemma1.z0",
               "z_slope": "lemma1.z_slope", "eps": "lemma1.eps"},
    "lemma2": {"p": "lemma2.p", "q": "lemma2.q", "r": "lemma2.r", "s": "lemma2.s", "t": "lemma2.t",
               "method": "lemma2.method", "budget": "lemma2.budget",
               "transform": "lemma2.transform", "qmc_seed": "lemma2.seed"},
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="", help="JSON run configuration")
    common.add_argument("--output", help="output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--jobs", type=int)
    common.add_argument("--profile", action="store_true", default=None)
    common.add_argument("--log-level", dest="log_level",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--rel-tol", dest="rel_tol", type=float)
    common.add_argument("--max-total-degree", dest="max_total_degree", type=int)
    common.add_argument("--quadrature-order", dest="quadrature_order", type=int)

    domain = argparse.ArgumentParser(add_help=False)
    domain.add_argument("--m", type=int)
    domain.add_argument("--n", type=int)
    domain.add_argument("--alpha", type=_floats)

    quad = argparse.ArgumentParser(add_help=False)
    quad.add_argument("--transform", choices=["rational", "tangent"])
    quad.add_argument("--base-order", dest="base_order", type=int)
    quad.add_argument("--levels", type=int, help="refinement levels")
    quad.add_argument("--target-rel-tol", dest="target_rel_tol", type=float)
    quad.add_argument("--data", type=_json, help="boundary data as a JSON list")

    parser = argparse.ArgumentParser(prog="lauricella",
                                     description="Lauricella F_A, the singular-equation kernel "
                                                 "and the Neumann problem in the hyperoctant.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-fa", parents=[common], help="evaluate F_A")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=_floats)
    p.add_argument("--c", type=_floats)
    p.add_argument("--x", type=_floats, action="append", help="argument vector (repeatable)")
    p.add_argument("--method", choices=["auto", "series", "integral"])

    p = sub.add_parser("eval-kernel", parents=[common, domain], help="evaluate q and ∇_ξ q")
    p.add_argument("--x", type=_floats, action="append")
    p.add_argument("--xi", type=_floats, action="append")

    p = sub.add_parser("solve", parents=[common, domain, quad], help="evaluate u at points")
    p.add_argument("--points", type=_floats, action="append", help="a point ξ (repeatable)")

    p = sub.add_parser("flux", parents=[common, domain, quad], help="weighted flux at points")
    p.add_argument("--points", type=_floats, action="append")
    p.add_argument("--face", type=int, help="singular face, 1-based")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("lemma1", parents=[common], help="limit sequence of the first lemma")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=_floats)
    p.add_argument("--c", type=_floats)
    p.add_argument("--z0", type=_floats)
    p.add_argument("--z-slope", dest="z_slope", type=_floats)
    p.add_argument("--eps", type=_floats)

    p = sub.add_parser("lemma2", parents=[common], help="closed form vs. numeric integral")
    for flag in ("p", "q", "r"):
        p.add_argument(f"--{flag}", type=_floats)
    p.add_argument("--s", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--method", choices=["nested", "qmc"])
    p.add_argument("--budget", type=int)
    p.add_argument("--transform", choices=["rational", "tangent"])
    p.add_argument("--qmc-seed", dest="qmc_seed", type=int)
    return parser


def overrides_from_args(args: argparse.Namespace) -> dict[str, Any]:
    mapping = {**_COMMON, **_EVAL, **_SECTIONS[args.command]}
    out: dict[str, Any] = {"command": args.command}
    for dest, key in mapping.items():
        value = getattr(args, dest, None)
        if value is not None:
            out[key] = value
    return out


# ── Commands ───────────────────────────────────────────────────


def _eval_fa(config: RunConfig) -> tuple[list[str], list[list], bool]:
    params = config.fa_params
    columns = [f"x_{i + 1}" for i in range(params.n)] + ["value", "method", "terms_used", "converged"]
    rows, ok = [], True
    for x in config.fa_points:
        try:
            res = lauricella_fa(params, x, config.eval_options, config.fa_method)
            rows.append([*x.tolist(), res.value, res.method.value, res.terms_used, res.converged])
        except LauricellaError as exc:
            logger.warning("F_A at %s failed: %s", x.tolist(), exc)
            rows.append([*x.tolist(), float("nan"), "", 0, False])
            ok = False
    return columns, rows, ok


def _eval_kernel(config: RunConfig) -> tuple[list[str], list[list], bool]:
    spec = config.domain
    m = spec.m
    columns = ([f"x_{i + 1}" for i in range(m)] + [f"xi_{i + 1}" for i in range(m)]
               + ["q"] + [f"dq_dxi_{i + 1}" for i in range(m)])
    rows, ok = [], True
    for i, x in enumerate(config.kernel_x):
        xi = config.kernel_xi[0 if len(config.kernel_xi) == 1 else i]
        try:
            value = q(x, xi, spec, config.eval_options)
            grad = grad_xi_q(x, xi, spec, config.eval_options).tolist()
        except LauricellaError as exc:
            logger.warning("kernel at x=%s, ξ=%s failed: %s", x.tolist(), xi.tolist(), exc)
            value, grad, ok = float("nan"), [float("nan")] * m, False
        rows.append([*x.tolist(), *xi.tolist(), value, *grad])
    return columns, rows, ok


def _solve(config: RunConfig) -> tuple[list[str], list[list], bool]:
    spec = config.domain
    field = solve_u(config.data, config.points, spec, config.quadrature, config.eval_options,
                    jobs=config.jobs, profile=config.profile)
    columns = ([f"xi_{i + 1}" for i in range(spec.m)] + ["u", "err_est"]
               + [f"I_{j + 1}" for j in range(spec.n)])
    rows = [[*p.tolist(), float(v), float(e), *c.tolist()]
            for p, v, e, c in zip(field.points, field.values, field.errors, field.contributions)]
    if config.profile:
        records = [{"index": r.index, "point": field.points[r.index].tolist(),
                    "nodes_per_face": list(r.nodes), "seconds": r.seconds,
                    "failure": field.failures[r.index]} for r in field.profile]
        write_profile(records, profile_path(config.output_path, get_output_dir(), "solve"))
    return columns, rows, field.ok


def _flux(config: RunConfig) -> tuple[list[str], list[list], bool]:
    spec = config.domain
    k = config.flux_face
    solution = NeumannSolution(config.data, spec, config.quadrature, config.eval_options)

    def evaluate(xi: np.ndarray):
        started = time.perf_counter()
        try:
            est = solution.components(xi, [k])
        except LauricellaError as exc:
            logger.warning("flux at %s failed: %s", xi.tolist(), exc)
            return float("nan"), float("nan"), 0, time.perf_counter() - started
        weight = xi[k] ** (2.0 * spec.alpha[k])
        return (weight * float(est.value[0]), weight * float(est.error[0]), est.nodes,
                time.perf_counter() - started)

    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        results = list(pool.map(evaluate, config.points))
    columns = [f"xi_{i + 1}" for i in range(spec.m)] + ["face", "flux", "err_est"]
    rows = [[*p.tolist(), k + 1, value, err] for p, (value, err, _, _) in zip(config.points, results)]
    if config.profile:
        records = [{"index": i, "point": p.tolist(), "nodes": nodes, "seconds": seconds}
                   for i, (p, (_, _, nodes, seconds)) in enumerate(zip(config.points, results))]
        write_profile(records, profile_path(config.output_path, get_output_dir(), "flux"))
    return columns, rows, all(np.isfinite(r[1]) for r in results)


def _lemma1(config: RunConfig) -> tuple[list[str], list[list], bool]:
    s = config.lemma1
    closed = lemma1_closed_form(s["a"], s["b"], s["c"], s["z0"])
    values = lemma1_sequence(s["a"], s["b"], s["c"], s["z0"], s["eps"], s["z_slope"],
                             config.eval_options)
    rows = [[float(e), float(v), closed, abs(v - closed) / abs(closed)]
            for e, v in zip(s["eps"], values)]
    return ["eps", "value", "closed_form", "rel_error"], rows, True


def _lemma2(config: RunConfig) -> tuple[list[str], list[list], bool]:
    s = config.lemma2
    params = config.lemma2_params
    closed = lemma2_closed_form(params)
    numeric = lemma2_numeric(params, s["method"], s["budget"], s["transform"], s["seed"])
    rows = [[closed, numeric, abs(numeric - closed) / abs(closed), s["method"]]]
    return ["closed_form", "numeric", "rel_error", "method"], rows, True


_TABLE_COMMANDS = {
    "eval-fa": _eval_fa,
    "eval-kernel": _eval_kernel,
    "solve": _solve,
    "flux": _flux,
    "lemma1": _lemma1,
    "lemma2": _lemma2,
}


def _verify(config: RunConfig) -> int:
    reports = run_suite(config.suite, config.seed, config.jobs, config.tolerances)
    write_text(to_jsonl(reports, include_runtime=config.profile), config.output_path)
    table = summary_table(reports, include_runtime=config.profile)
    (sys.stdout if config.output_path else sys.stderr).write(table)
    return EXIT_OK if suite_passed(reports) else EXIT_NUMERIC


def run(config: RunConfig) -> int:
    """Execute one configured command and write its output."""
    try:
        if config.command == "verify":
            return _verify(config)
        columns, rows, ok = _TABLE_COMMANDS[config.command](config)
    except LauricellaError as exc:
        logger.error("%s failed: %s", config.command, exc)
        return EXIT_NUMERIC
    write_rows(columns, rows, config.output_path, config.output_format)
    return EXIT_OK if ok else EXIT_NUMERIC


def configure_logging(level: str):
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.config, overrides_from_args(args))
    except ConfigError as exc:
        configure_logging(args.log_level or "WARNING")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    configure_logging(config.log_level)
    return run(config)
