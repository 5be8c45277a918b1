"""
Energy identity on the truncated half-ball D_R = {|x| < R, x_1 > 0} in
three dimensions with one singular face:

    ∫_{D_R} x_1^(2α) |∇u|² dx = ∫_{|x|=R} x_1^(2α) u ∂u/∂N dS - ∫_{|x̃|<R} ν u dx̃.

Spherical coordinates with the polar axis along x_1 (μ = x_1/ρ): the
volume term is integrated as ρ^(2-2α) μ^(-2α) · x_1^(4α)|∇u|², which is
bounded up to the face, with Gauss–Jacobi rules in ρ and μ and the
trapezoid rule in the azimuth.

With nonzero data this is an extension of the homogeneous identity, so
its reports are flagged as extended.
"""

import logging
import math
from typing import NamedTuple, Protocol, Sequence

import numpy as np

from errors import GridTooCoarse, PreconditionError
from hyperfun.rules import jacobi_rule
from neumann.solver import VALUE, NeumannSolution
from verify.report import CheckReport, make_report

logger = logging.getLogger(__name__)

TRACE_OFFSET = 1e-4  # face trace taken at x_1 = TRACE_OFFSET · R


class EnergyField(Protocol):
    def value_and_gradient(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]: ...

    def trace(self, tilde: np.ndarray) -> np.ndarray: ...

    def datum(self, tilde: np.ndarray) -> np.ndarray: ...


class EnergySides(NamedTuple):
    volume: float
    sphere: float
    face: float

    @property
    def boundary(self) -> float:
        return self.sphere + self.face


class SolutionEnergyField:
    """The computed solution, evaluated with fixed level-0 rules."""

    def __init__(self, solution: NeumannSolution, radius: float):
        spec = solution.spec
        if (spec.m, spec.n) != (3, 1):
            raise PreconditionError(f"energy check needs m=3, n=1, got m={spec.m}, n={spec.n}")
        self.solution = solution
        self.delta = TRACE_OFFSET * radius

    def value_and_gradient(self, points):
        values, grads = [], []
        for p in points:
            est = self.solution.components(p, [VALUE, 0, 1, 2], level=0)
            values.append(est.value[0])
            grads.append(est.value[1:])
        return np.asarray(values), np.asarray(grads)

    def trace(self, tilde):
        return np.array([self.solution.face_trace(0, t, self.delta, level=0) for t in tilde])

    def datum(self, tilde):
        return self.solution.data[0](tilde)


class PowerField:
    """u = x_1^(1-2α): annihilated by the operator, with constant flux 1-2α."""

    def __init__(self, alpha: float, amplitude: float = 1.0):
        self.s = 1.0 - 2.0 * alpha
        self.amplitude = amplitude

    def value_and_gradient(self, points):
        x1 = points[:, 0]
        grads = np.zeros_like(points)
        grads[:, 0] = self.amplitude * self.s * x1 ** (self.s - 1.0)
        return self.amplitude * x1**self.s, grads

    def trace(self, tilde):
        return np.zeros(len(tilde))

    def datum(self, tilde):
        return np.full(len(tilde), self.amplitude * self.s)


def _azimuth(count: int) -> tuple[np.ndarray, float]:
    return 2.0 * math.pi * np.arange(count) / count, 2.0 * math.pi / count


def energy_sides(field: EnergyField, radius: float, alpha: float,
                 grid: Sequence[int]) -> EnergySides:
    """Both sides of the identity on an (n_ρ, n_μ, n_φ) grid."""
    n_rho, n_mu, n_phi = (int(g) for g in grid)
    phi, w_phi = _azimuth(n_phi)
    cos_phi, sin_phi = np.cos(phi), np.sin(phi)

    rho, w_rho = jacobi_rule(0.0, radius, n_rho, left=2.0 - 2.0 * alpha)
    mu, w_mu = jacobi_rule(0.0, 1.0, n_mu, left=-2.0 * alpha)
    R, M, P = np.meshgrid(rho, mu, np.arange(n_phi), indexing="ij")
    side = R * np.sqrt(1.0 - M**2)
    points = np.stack([(R * M).ravel(), (side * cos_phi[P]).ravel(), (side * sin_phi[P]).ravel()], axis=1)
    _, grads = field.value_and_gradient(points)
    energy = points[:, 0] ** (4.0 * alpha) * np.einsum("ij,ij->i", grads, grads)
    weights = np.multiply.outer(np.multiply.outer(w_rho, w_mu), np.full(n_phi, w_phi)).ravel()
    volume = float(weights @ energy)

    mu_s, w_mu_s = jacobi_rule(0.0, 1.0, n_mu, left=2.0 * alpha)
    M, P = np.meshgrid(mu_s, np.arange(n_phi), indexing="ij")
    side = radius * np.sqrt(1.0 - M**2)
    shell = np.stack([(radius * M).ravel(), (side * cos_phi[P]).ravel(), (side * sin_phi[P]).ravel()], axis=1)
    values, grads = field.value_and_gradient(shell)
    radial = np.einsum("ij,ij->i", grads, shell) / radius
    sphere = radius ** (2.0 + 2.0 * alpha) * float(
        np.multiply.outer(w_mu_s, np.full(n_phi, w_phi)).ravel() @ (values * radial))

    r_disk, w_disk = jacobi_rule(0.0, radius, n_rho)
    Rd, P = np.meshgrid(r_disk, np.arange(n_phi), indexing="ij")
    tilde = np.stack([(Rd * cos_phi[P]).ravel(), (Rd * sin_phi[P]).ravel()], axis=1)
    nu = field.datum(tilde)
    live = nu != 0.0
    flux = np.zeros(len(tilde))
    if live.any():
        flux[live] = nu[live] * field.trace(tilde[live])
    face = -float(np.multiply.outer(w_disk * r_disk, np.full(n_phi, w_phi)).ravel() @ flux)
    return EnergySides(volume, sphere, face)


def check_energy_identity(field: EnergyField, radius: float, alpha: float,
                          grids: Sequence[Sequence[int]], tolerance: float = 0.05,
                          name: str = "energy", seed=None) -> CheckReport:
    """
    volume / (sphere + face) against 1 on the finest grid; GridTooCoarse
    when either side moves by more than tolerance/2 between the last two
    grids.
    """
    if len(grids) < 2:
        raise PreconditionError("energy check needs two grid resolutions")
    sides = [energy_sides(field, radius, alpha, g) for g in grids]
    coarse, fine = sides[-2], sides[-1]
    for label, a, b in (("volume", coarse.volume, fine.volume),
                        ("boundary", coarse.boundary, fine.boundary)):
        if abs(a - b) > 0.5 * tolerance * max(abs(b), np.finfo(float).tiny):
            raise GridTooCoarse(f"{name}: {label} term moved from {a!r} to {b!r} between grids")
    scale = max(abs(fine.volume), abs(fine.boundary))
    ratio = 1.0 if scale == 0.0 else fine.volume / fine.boundary
    logger.info("%s: volume %.6g, sphere %.6g, face %.6g", name, *fine)
    return make_report(name, ratio, 1.0, tolerance, seed=seed, extended=True,
                       details={"grids": [list(g) for g in grids],
                                "sides": [s._asdict() for s in sides]})
