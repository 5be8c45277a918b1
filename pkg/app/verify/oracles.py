"""
Independent numerical oracles: central differences, Richardson
extrapolation, nested adaptive quadrature (scipy) and scrambled Sobol
quasi-Monte Carlo over the positive orthant.

None of these share code with the evaluation paths they are used to check.
"""

import math
import warnings
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy.stats import qmc

from errors import BudgetExhausted, PreconditionError

QMC_CHUNK = 1 << 16


def central_difference(f: Callable[[np.ndarray], float], x: Sequence[float], k: int,
                       h: float = 1e-5) -> float:
    x = np.asarray(x, dtype=float)
    step = np.zeros_like(x)
    step[k] = h
    return (f(x + step) - f(x - step)) / (2.0 * h)


def richardson(coarse: float, fine: float, ratio: float, order: float) -> float:
    """Two-term extrapolation for an error ~ C h^order, h_coarse / h_fine = ratio."""
    factor = ratio**order - 1.0
    if not factor > 0.0:
        raise PreconditionError(f"need ratio^order > 1, got ratio={ratio!r}, order={order!r}")
    return fine + (fine - coarse) / factor


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of log|y| against log x."""
    return float(np.polyfit(np.log(np.asarray(x, dtype=float)),
                            np.log(np.abs(np.asarray(y, dtype=float))), 1)[0])


# ── Maps of (0, 1) onto (0, ∞) ─────────────────────────────────


def rational_map(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return t / (1.0 - t), 1.0 / (1.0 - t) ** 2


def tangent_map(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    half = 0.5 * math.pi
    return np.tan(half * t), half / np.cos(half * t) ** 2


MAPS = {"rational": rational_map, "tangent": tangent_map}


def _map(transform: str):
    try:
        return MAPS[transform]
    except KeyError:
        raise PreconditionError(f"unknown transform {transform!r}") from None


# ── Integrators ────────────────────────────────────────────────


def nested_quad(f: Callable[..., float], dims: int, budget: int,
                transform: str = "rational", epsrel: float = 1e-10) -> float:
    """
    ∫_{R+^dims} f by scipy's nested adaptive quadrature on the mapped unit
    cube. `budget` caps the subintervals of every one-dimensional pass;
    running out of it raises BudgetExhausted.
    """
    mapping = _map(transform)

    def mapped(*t):
        x, jac = mapping(np.asarray(t, dtype=float))
        if not np.all(np.isfinite(x)):
            return 0.0
        return float(f(*x) * np.prod(jac))

    opts = {"limit": int(budget), "epsabs": 0.0, "epsrel": epsrel}
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, _ = integrate.nquad(mapped, [(0.0, 1.0)] * dims, opts=[opts] * dims)
        except integrate.IntegrationWarning as exc:
            raise BudgetExhausted(f"nested quadrature over {dims} axes: {exc}") from exc
    return float(value)


def qmc_integrate(f: Callable[[np.ndarray], np.ndarray], dims: int, budget: int,
                  transform: str = "tangent", seed: int = 0) -> float:
    """
    ∫_{R+^dims} f by scrambled Sobol points on the mapped unit cube. f maps
    an (N, dims) array to N values. The point count is budget rounded down
    to a power of two.
    """
    if budget < 2:
        raise BudgetExhausted(f"QMC budget {budget!r} is below two points")
    mapping = _map(transform)
    total_log2 = int(math.floor(math.log2(budget)))
    sampler = qmc.Sobol(d=dims, scramble=True, seed=seed)
    remaining = 1 << total_log2
    acc = 0.0
    count = 0
    tiny = np.finfo(float).tiny
    while remaining:
        chunk = min(QMC_CHUNK, remaining)
        t = np.clip(sampler.random(chunk), tiny, 1.0 - np.finfo(float).eps)
        x, jac = mapping(t)
        acc += float(np.sum(f(x) * np.prod(jac, axis=1)))
        count += chunk
        remaining -= chunk
    return acc / count


def semi_infinite_quad(f: Callable[[float], float], lower: float = 0.0,
                       epsrel: float = 1e-10, limit: int = 200) -> float:
    """∫_lower^∞ f with scipy.integrate.quad, split at lower + 1."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            head, _ = integrate.quad(f, lower, lower + 1.0, epsabs=0.0, epsrel=epsrel, limit=limit)
            tail, _ = integrate.quad(f, lower + 1.0, math.inf, epsabs=0.0, epsrel=epsrel, limit=limit)
        except integrate.IntegrationWarning as exc:
            raise BudgetExhausted(f"quad on ({lower!r}, inf): {exc}") from exc
    return float(head + tail)
