"""
Central-difference application of the singular operator

    E u = Σ_i ∂²u/∂x_i² + Σ_{j<n} (2α_j / x_j) ∂u/∂x_j.
"""

from typing import Callable, Sequence

import numpy as np

from errors import StencilOutOfDomain
from kernel.domain import DomainSpec

Field = Callable[[np.ndarray], float]


def pde_residual_terms(field: Field, p: Sequence[float], spec: DomainSpec,
                       h: float) -> np.ndarray:
    """
    The individual stencil terms of E u at p: m second differences followed
    by n singular first-difference terms. Their sum is the residual and the
    sum of their magnitudes the local scale.
    """
    p = spec.point(p)
    if not h > 0.0:
        raise StencilOutOfDomain(f"step must be positive, got {h!r}")
    if np.any(p[:spec.n] <= 2.0 * h):
        raise StencilOutOfDomain(
            f"stencil of step {h!r} at {p.tolist()} reaches a singular hyperplane"
        )
    center = float(field(p))
    second = np.empty(spec.m)
    first = np.empty(spec.n)
    for i in range(spec.m):
        step = np.zeros(spec.m)
        step[i] = h
        up = float(field(p + step))
        down = float(field(p - step))
        second[i] = (up - 2.0 * center + down) / h**2
        if i < spec.n:
            first[i] = 2.0 * spec.alpha[i] / p[i] * (up - down) / (2.0 * h)
    return np.concatenate((second, first))


def pde_residual(field: Field, p: Sequence[float], spec: DomainSpec, h: float) -> float:
    return float(np.sum(pde_residual_terms(field, p, spec, h)))


def residual_scale(terms: np.ndarray) -> float:
    return float(np.sum(np.abs(terms)))
