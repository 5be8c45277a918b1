"""
Properties of the fundamental solution on random samples: symmetry, the
finite-difference residual of the operator and its order, the vanishing
normal derivative on the singular faces, homogeneity and positivity.
"""

import logging
import math

import numpy as np

from hyperfun.params import DEFAULT_OPTIONS, EvalOptions
from kernel.domain import DomainSpec, kernel_constants
from kernel.fundamental import grad_x_q, q
from kernel.residual import pde_residual_terms, residual_scale
from settings.suites import FUNDAMENTAL_TOLERANCES
from verify.report import CheckReport, score_report

logger = logging.getLogger(__name__)

RESIDUAL_STEP = 1e-3
ORDER_STEPS = (1e-2, 5e-3)
NORMAL_OFFSETS = (1e-3, 0.0)
MIN_SEPARATION = 0.5


def sample_pairs(spec: DomainSpec, rng: np.random.Generator, count: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Interior (x, ξ) pairs at least MIN_SEPARATION apart."""
    pairs = []
    while len(pairs) < count:
        x, xi = (np.concatenate((rng.uniform(0.5, 2.0, spec.n), rng.uniform(-1.0, 1.0, spec.m - spec.n)))
                 for _ in range(2))
        if np.linalg.norm(x - xi) >= MIN_SEPARATION:
            pairs.append((x, xi))
    return pairs


def _relative_residuals(spec, pairs, h, opts) -> np.ndarray:
    out = []
    for x, xi in pairs:
        terms = pde_residual_terms(lambda p: q(p, xi, spec, opts), x, spec, h)
        scale = residual_scale(terms)
        out.append(abs(np.sum(terms)) / scale if scale > 0.0 else 0.0)
    return np.asarray(out)


def check_fundamental_solution(spec: DomainSpec, samples: int, rng: np.random.Generator,
                               name: str = "fundamental",
                               tolerances: dict[str, float] | None = None,
                               opts: EvalOptions = DEFAULT_OPTIONS, seed=None) -> CheckReport:
    tol = dict(FUNDAMENTAL_TOLERANCES, **(tolerances or {}))
    pairs = sample_pairs(spec, rng, samples)
    scores: dict[str, float] = {}
    details: dict = {}

    symmetry = max(abs(q(x, xi, spec, opts) - q(xi, x, spec, opts)) / q(x, xi, spec, opts)
                   for x, xi in pairs)
    scores["symmetry"] = symmetry / tol["symmetry"]

    residual = _relative_residuals(spec, pairs, RESIDUAL_STEP, opts)
    scores["residual"] = float(np.max(residual)) / tol["residual"]
    details["residual"] = residual

    coarse, fine = (np.linalg.norm(_relative_residuals(spec, pairs, h, opts)) for h in ORDER_STEPS)
    ratio = coarse / fine if fine > 0.0 else math.inf
    scores["order"] = abs(ratio - 4.0) / tol["order"]
    details["order_ratio"] = ratio

    normal = 0.0
    for x, xi in pairs:
        for k in range(spec.n):
            for offset in NORMAL_OFFSETS:
                y = x.copy()
                y[k] = offset
                g = grad_x_q(y, xi, spec, opts)
                normal = max(normal, abs(g[k]) / np.linalg.norm(g))
    scores["normal_derivative"] = normal / tol["normal_derivative"]
    details["normal_ratio"] = normal

    exponent = 2.0 - spec.m - 2.0 * spec.alpha_sum
    homogeneity = 0.0
    positive = True
    for x, xi in pairs:
        lam = float(rng.uniform(0.5, 2.0))
        base = q(x, xi, spec, opts)
        positive &= base > 0.0
        scaled = q(lam * x, lam * xi, spec, opts)
        homogeneity = max(homogeneity, abs(scaled / (base * lam**exponent) - 1.0))
    scores["homogeneity"] = homogeneity / tol["homogeneity"]
    scores["positivity"] = 0.0 if positive else math.inf

    details["beta"] = kernel_constants(spec).beta
    logger.info("%s scores %s", name, scores)
    return score_report(name, scores, seed=seed, details=details)
