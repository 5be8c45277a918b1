"""
End-to-end checks of the Neumann solution on the built-in scenarios:
recovery of the boundary flux, vanishing of the off-face fluxes, decay at
infinity and the interior residual of the computed u.
"""

import itertools
import logging
import math
from typing import Callable

import numpy as np

from errors import ConfigError, LauricellaError
from kernel.residual import pde_residual_terms, residual_scale
from neumann.data import decay_bound
from neumann.solver import NeumannSolution
from settings.config import build_data, build_domain, build_eval_options, build_quadrature
from settings.suites import NEUMANN_TOLERANCES, SCENARIOS
from verify.oracles import loglog_slope, richardson
from verify.report import CheckReport, failed_report, make_report, score_report

logger = logging.getLogger(__name__)


def scenario_solution(scenario: dict, where: str = "scenario") -> NeumannSolution:
    spec = build_domain(scenario["domain"], f"{where}.domain")
    data = build_data(scenario.get("data", []), spec, f"{where}.data")
    quad = build_quadrature(scenario.get("quadrature", {}), f"{where}.quadrature")
    opts = build_eval_options(scenario.get("eval", {}), f"{where}.eval")
    return NeumannSolution(data, spec, quad, opts)


def _decay_epsilon(solution: NeumannSolution) -> float:
    live = [d.bound_eps for d in solution.data if not d.is_zero]
    return min(live) if live else 1.0


# ── Individual checks ──────────────────────────────────────────


def check_flux_recovery(solution: NeumannSolution, entry: dict, tolerance: float,
                        name: str) -> CheckReport:
    """ξ_k^(2α_k) ∂u/∂ξ_k along ξ_k → 0, extrapolated with order 1 + 2α_k."""
    k = entry["face"] - 1
    steps = [float(s) for s in entry["steps"]]
    base = np.asarray(entry["base"], dtype=float)
    values = []
    for step in steps:
        point = base.copy()
        point[k] = step
        values.append(solution.weighted_flux(point, k).value)
    target = float(solution.data[k](np.delete(base, k)[None, :])[0])
    order = 1.0 + 2.0 * solution.spec.alpha[k]
    limit = richardson(values[-2], values[-1], steps[-2] / steps[-1], order)
    return make_report(name, limit, target, tolerance,
                       details={"steps": steps, "values": values, "order": order})


def check_off_face(solution: NeumannSolution, entry: dict, delta: float,
                   name: str) -> CheckReport:
    """
    ξ_l^(2α_l) ∂I_k/∂ξ_l must decrease monotonically with a log-log slope
    of at least (1 + 2α_l)(1 - δ). The score is required slope / fitted slope.
    """
    l, k = entry["l"] - 1, entry["k"] - 1
    steps = [float(s) for s in entry["steps"]]
    base = np.asarray(entry["base"], dtype=float)
    path = []
    for step in steps:
        point = base.copy()
        point[l] = step
        path.append(point)
    sequence = solution.off_face_flux(path, l, k)
    magnitude = np.abs(sequence)
    required = (1.0 + 2.0 * solution.spec.alpha[l]) * (1.0 - delta)
    if not magnitude.any():
        return score_report(name, {"slope": 0.0}, details={"sequence": sequence})
    monotone = bool(np.all(np.diff(magnitude) < 0.0))
    slope = loglog_slope(steps, magnitude) if np.all(magnitude > 0.0) else -math.inf
    score = required / slope if monotone and slope > 0.0 else math.inf
    return score_report(name, {"slope": score},
                        details={"sequence": sequence, "fitted_slope": slope,
                                 "required_slope": required, "monotone": monotone,
                                 "drop": magnitude[0] / magnitude[-1] if magnitude[-1] else math.inf})


def check_decay(solution: NeumannSolution, entry: dict, tolerance: float,
                name: str) -> CheckReport:
    """|u(R d)| R^ε must not grow by more than `tolerance` between radii."""
    direction = np.asarray(entry["direction"], dtype=float)
    direction /= np.linalg.norm(direction)
    radii = [float(r) for r in entry["radii"]]
    eps = _decay_epsilon(solution)
    products = np.array([abs(solution.value(r * direction)) * r**eps for r in radii])
    growth = 0.0
    for before, after in zip(products[:-1], products[1:]):
        if before > 0.0:
            growth = max(growth, after / before - 1.0)
        elif after > 0.0:
            growth = math.inf
    bound = sum(decay_bound(d, solution.spec) for d in solution.data if not d.is_zero)
    return score_report(name, {"growth": max(growth, 0.0) / tolerance},
                        details={"radii": radii, "eps": eps, "products": products,
                                 "bound_constant": bound})


def check_interior_residual(solution: NeumannSolution, entry: dict, tolerance: float,
                            name: str) -> CheckReport:
    """
    Residual of the operator applied to u on a tensor grid, each stencil
    evaluated with one fixed rule anchored at its centre.
    """
    spec = solution.spec
    axes = [np.linspace(lo, hi, entry["count"]) for lo, hi in zip(entry["lower"], entry["upper"])]
    h = float(entry["h"])
    worst = 0.0
    for p in itertools.product(*axes):
        p = np.asarray(p)
        field: Callable[[np.ndarray], float] = (
            lambda x, anchor=p: solution.value(x, anchor=anchor, level=0))
        terms = pde_residual_terms(field, p, spec, h)
        scale = residual_scale(terms)
        if scale > 0.0:
            worst = max(worst, abs(float(np.sum(terms))) / scale)
    return score_report(name, {"residual": worst / tolerance},
                        details={"points": int(np.prod([len(a) for a in axes])), "h": h,
                                 "worst_relative": worst})


# ── Scenario driver ────────────────────────────────────────────


def check_neumann_end_to_end(scenario_name: str, scenario: dict | None = None,
                             tolerance: Callable[[str, float], float] | None = None,
                             seed=None) -> list[CheckReport]:
    """
    Every check a scenario declares; a failing check is reported without
    stopping the others. `tolerance(name, default)` supplies overrides.
    """
    scenario = scenario if scenario is not None else SCENARIOS[scenario_name]
    tolerance = tolerance or (lambda _name, default: default)
    prefix = f"neumann.{scenario_name}"
    try:
        solution = scenario_solution(scenario, f"scenarios.{scenario_name}")
    except (ConfigError, LauricellaError) as exc:
        return [failed_report(f"{prefix}.setup", str(exc), seed=seed)]

    jobs = []
    for entry in scenario.get("flux", []):
        check = f"{prefix}.flux_S{entry['face']}"
        jobs.append((check, lambda e=entry, c=check: check_flux_recovery(
            solution, e, tolerance(c, NEUMANN_TOLERANCES["flux_recovery"]), c)))
    for entry in scenario.get("off_face", []):
        check = f"{prefix}.off_face_l{entry['l']}_k{entry['k']}"
        jobs.append((check, lambda e=entry, c=check: check_off_face(
            solution, e, tolerance(c, NEUMANN_TOLERANCES["off_face_slope"]), c)))
    if "decay" in scenario:
        check = f"{prefix}.decay"
        jobs.append((check, lambda c=check: check_decay(
            solution, scenario["decay"], tolerance(c, NEUMANN_TOLERANCES["decay"]), c)))
    if "residual" in scenario:
        check = f"{prefix}.residual"
        jobs.append((check, lambda c=check: check_interior_residual(
            solution, scenario["residual"], tolerance(c, NEUMANN_TOLERANCES["residual"]), c)))

    reports = []
    for check, run in jobs:
        try:
            report = run()
        except LauricellaError as exc:
            logger.warning("%s failed: %s", check, exc)
            report = failed_report(check, str(exc))
        reports.append(report._replace(seed=seed))
    return reports
