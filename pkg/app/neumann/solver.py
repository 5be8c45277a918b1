"""
Explicit solution of the Neumann problem in the hyperoctant:

    u(ξ) = Σ_j I_j(ξ),
    I_j(ξ) = -∫_{S_j} x̃^(2α) ν_j(x̃) q(x̃, ξ) dx̃,

where x̃^(2α) is the product of x_i^(2α_i) over the remaining singular
axes of S_j. With this sign ξ_k^(2α_k) ∂u/∂ξ_k tends to +ν_k(ξ̃) as ξ
approaches S_k.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from errors import LauricellaError, PreconditionError
from hyperfun.params import DEFAULT_OPTIONS, EvalOptions
from kernel.domain import DomainSpec, kernel_constants
from kernel.fundamental import kernel_gradients, kernel_values
from neumann.data import BoundaryDatum, by_face, certify
from neumann.quadrature import FaceEstimate, QuadratureSpec, integrate_face

logger = logging.getLogger(__name__)

VALUE = None  # component marker for I_j itself, as opposed to ∂I_j/∂ξ_p


class FaceValue(NamedTuple):
    value: float
    error: float
    nodes: int


class PointProfile(NamedTuple):
    index: int
    nodes: tuple[int, ...]
    seconds: float


@dataclass
class SolutionField:
    points: np.ndarray
    values: np.ndarray
    contributions: np.ndarray
    errors: np.ndarray
    failures: list[str | None]
    profile: list[PointProfile] = field(default_factory=list)

    @property
    def failed(self) -> np.ndarray:
        return np.array([f is not None for f in self.failures], dtype=bool)

    @property
    def ok(self) -> bool:
        return not self.failed.any()


class FluxEstimate(NamedTuple):
    value: float
    error: float


class NeumannSolution:
    """Boundary data plus everything needed to evaluate u and its fluxes."""

    def __init__(self, data: Sequence[BoundaryDatum], spec: DomainSpec,
                 quad: QuadratureSpec, opts: EvalOptions = DEFAULT_OPTIONS):
        self.spec = spec
        self.quad = quad
        self.opts = opts
        self.data = by_face(data, spec)
        for datum in self.data:
            certify(datum, spec)
        self.consts = kernel_constants(spec)

    # ── Face integrals ─────────────────────────────────────────

    def face_estimate(self, j: int, xi: Sequence[float], components: Sequence[int | None],
                      anchor: Sequence[float] | None = None,
                      level: int | None = None) -> FaceEstimate:
        """I_j (component None) and ∂I_j/∂ξ_p (component p) at ξ."""
        spec = self.spec
        spec.check_face(j)
        xi = spec.interior_point(xi)
        anchor = xi if anchor is None else spec.interior_point(anchor)
        components = list(components)
        datum = self.data[j]
        if datum.is_zero:
            zeros = np.zeros(len(components))
            return FaceEstimate(zeros, zeros.copy(), 0)

        want_value = VALUE in components
        grads = [p for p in components if p is not VALUE]

        def integrand(points: np.ndarray) -> np.ndarray:
            out = np.zeros((len(points), len(components)))
            nu = datum(np.delete(points, j, axis=1))
            live = nu != 0.0
            if not live.any():
                return out
            sub = points[live]
            columns = {}
            if want_value:
                columns[VALUE] = kernel_values(sub, xi, spec, self.opts, consts=self.consts)
            if grads:
                g = kernel_gradients(sub, xi, spec, self.opts, components=grads, consts=self.consts)
                columns.update({p: g[:, c] for c, p in enumerate(grads)})
            for c, p in enumerate(components):
                out[live, c] = -nu[live] * columns[p]
            return out

        return integrate_face(j, anchor, datum, spec, self.quad, integrand,
                              len(components), level=level)

    def contributions(self, xi: Sequence[float], anchor=None, level=None) -> list[FaceValue]:
        out = []
        for j in range(self.spec.n):
            est = self.face_estimate(j, xi, [VALUE], anchor=anchor, level=level)
            out.append(FaceValue(float(est.value[0]), float(est.error[0]), est.nodes))
        return out

    def components(self, xi: Sequence[float], components: Sequence[int | None],
                   anchor=None, level=None) -> FaceEstimate:
        """u and/or ∂u/∂ξ_p at ξ, summed over all faces."""
        value = np.zeros(len(components))
        error = np.zeros(len(components))
        nodes = 0
        for j in range(self.spec.n):
            est = self.face_estimate(j, xi, components, anchor=anchor, level=level)
            value += est.value
            error += est.error
            nodes += est.nodes
        return FaceEstimate(value, error, nodes)

    # ── Field quantities ───────────────────────────────────────

    def value(self, xi: Sequence[float], anchor=None, level=None) -> float:
        return float(self.components(xi, [VALUE], anchor, level).value[0])

    def derivative(self, xi: Sequence[float], k: int, anchor=None, level=None) -> FluxEstimate:
        """∂u/∂ξ_k with its quadrature error estimate."""
        if not 0 <= k < self.spec.m:
            raise PreconditionError(f"coordinate index {k} out of range for m={self.spec.m}")
        est = self.components(xi, [k], anchor, level)
        return FluxEstimate(float(est.value[0]), float(est.error[0]))

    def weighted_flux(self, xi: Sequence[float], k: int) -> FluxEstimate:
        """ξ_k^(2α_k) ∂u/∂ξ_k."""
        self.spec.check_face(k)
        xi = self.spec.interior_point(xi)
        weight = xi[k] ** (2.0 * self.spec.alpha[k])
        d = self.derivative(xi, k)
        return FluxEstimate(weight * d.value, weight * d.error)

    def off_face_flux(self, xi_path: Sequence[Sequence[float]], l: int, k: int) -> np.ndarray:
        """ξ_l^(2α_l) ∂I_k/∂ξ_l along a path sending ξ_l to 0."""
        self.spec.check_face(l)
        self.spec.check_face(k)
        if l == k:
            raise PreconditionError("off-face flux needs l != k")
        out = []
        for xi in xi_path:
            xi = self.spec.interior_point(xi)
            est = self.face_estimate(k, xi, [l])
            out.append(xi[l] ** (2.0 * self.spec.alpha[l]) * float(est.value[0]))
        return np.asarray(out)

    def face_trace(self, k: int, tilde: Sequence[float], delta: float,
                   level: int | None = None) -> float:
        """
        u on S_k, from u at distance δ corrected by the flux condition:
        u(x̃, 0) ≈ u(x̃, δ) - δ^(1-2α_k) ν_k(x̃) / (1-2α_k).
        """
        self.spec.check_face(k)
        tilde = np.asarray(tilde, dtype=float)
        point = np.insert(tilde, k, delta)
        s = 1.0 - 2.0 * self.spec.alpha[k]
        nu = float(self.data[k](tilde[None, :])[0])
        return self.value(point, level=level) - delta**s * nu / s


# ── Module-level operations ────────────────────────────────────


def face_integral_Ij(j: int, datum: BoundaryDatum, xi: Sequence[float], spec: DomainSpec,
                     quad: QuadratureSpec, opts: EvalOptions = DEFAULT_OPTIONS) -> FaceValue:
    """The contribution of one face datum to u(ξ)."""
    if datum.face != j:
        raise PreconditionError(f"datum belongs to face S_{datum.face + 1}, not S_{j + 1}")
    est = NeumannSolution([datum], spec, quad, opts).face_estimate(j, xi, [VALUE])
    return FaceValue(float(est.value[0]), float(est.error[0]), est.nodes)


def solve_u(data: Sequence[BoundaryDatum], points: Sequence[Sequence[float]], spec: DomainSpec,
            quad: QuadratureSpec, opts: EvalOptions = DEFAULT_OPTIONS,
            jobs: int = 1, profile: bool = False) -> SolutionField:
    """
    u at every point, with per-face contributions and error estimates.

    Points are independent: a failure at one point is recorded in
    `failures` and its row set to NaN; the rest of the batch completes.
    """
    solution = NeumannSolution(data, spec, quad, opts)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != spec.m:
        raise PreconditionError(f"points need {spec.m} coordinates, got shape {pts.shape}")

    def evaluate(i: int):
        started = time.perf_counter()
        try:
            faces = solution.contributions(pts[i])
        except LauricellaError as exc:
            logger.warning("point %d %s failed: %s", i, pts[i].tolist(), exc)
            return None, str(exc), PointProfile(i, (), time.perf_counter() - started)
        nodes = tuple(f.nodes for f in faces)
        return faces, None, PointProfile(i, nodes, time.perf_counter() - started)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(evaluate, range(len(pts))))

    contributions = np.full((len(pts), spec.n), np.nan)
    errors = np.full(len(pts), np.nan)
    failures: list[str | None] = []
    for i, (faces, failure, _) in enumerate(results):
        failures.append(failure)
        if faces is not None:
            contributions[i] = [f.value for f in faces]
            errors[i] = sum(f.error for f in faces)
    values = contributions.sum(axis=1)
    logger.info("solved %d points, %d failed", len(pts), sum(f is not None for f in failures))
    return SolutionField(pts, values, contributions, errors, failures,
                         [r[2] for r in results] if profile else [])


def weighted_flux(data: Sequence[BoundaryDatum], xi: Sequence[float], k: int, spec: DomainSpec,
                  quad: QuadratureSpec, opts: EvalOptions = DEFAULT_OPTIONS) -> FluxEstimate:
    return NeumannSolution(data, spec, quad, opts).weighted_flux(xi, k)


def off_face_flux_limit(data: Sequence[BoundaryDatum], xi_path: Sequence[Sequence[float]],
                        l: int, k: int, spec: DomainSpec, quad: QuadratureSpec,
                        opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    return NeumannSolution(data, spec, quad, opts).off_face_flux(xi_path, l, k)
