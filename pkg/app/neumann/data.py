"""
Boundary data ν_k for the weighted Neumann condition on the face S_k.

A datum is a vectorized function of the m-1 face coordinates x̃_k (rows of
an array) together with its declared far-field bound

    |ν_k(x̃)| <= c_k (1 + |x̃|²)^(-(1 - 2α_k + ε_k)/2),

which certify() checks by sampling before any solve. Each datum also
carries quadrature hints: feature centres/scales and explicit breakpoints
(grid lines of tabulated data).
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.stats import qmc

from errors import PreconditionError, UncertifiedDatum
from hyperfun.lemmas import lemma2_closed_form
from hyperfun.params import Lemma2Params
from kernel.domain import DomainSpec, kernel_constants
from neumann.tabulated import grid_from_rows, parse_table_file

logger = logging.getLogger(__name__)

CERTIFY_RADII = np.concatenate(([0.0], np.logspace(-3.0, 3.0, 121)))
CERTIFY_DIRECTIONS = 64
CERTIFY_SLACK = 1e-9


class DatumKind(str, Enum):
    ZERO = "zero"
    ALGEBRAIC = "algebraic"
    GAUSSIAN = "gaussian"
    COMPACT = "compact"
    TABULATED = "tabulated"
    COMBINED = "combined"
    CUSTOM = "custom"


class DatumFeature(NamedTuple):
    center: tuple[float, ...]
    scale: float


@dataclass(frozen=True, eq=False)
class BoundaryDatum:
    face: int
    nu: Callable[[np.ndarray], np.ndarray]
    bound_c: float
    bound_eps: float
    kind: DatumKind = DatumKind.CUSTOM
    features: tuple[DatumFeature, ...] = ()
    # per face axis, extra panel breakpoints
    breakpoints: tuple[tuple[float, ...], ...] = ()
    certify_from: float = 0.0
    label: str = field(default="")

    def __post_init__(self):
        if int(self.face) != self.face or self.face < 0:
            raise PreconditionError(f"face index must be a non-negative integer, got {self.face!r}")
        if not self.bound_c > 0.0:
            raise PreconditionError(f"bound_c must be positive, got {self.bound_c!r}")
        if not self.bound_eps > 0.0:
            raise PreconditionError(f"bound_eps must be positive, got {self.bound_eps!r}")

    @property
    def is_zero(self) -> bool:
        return self.kind is DatumKind.ZERO

    def __call__(self, tilde: np.ndarray) -> np.ndarray:
        tilde = np.atleast_2d(np.asarray(tilde, dtype=float))
        if self.is_zero:
            return np.zeros(tilde.shape[0])
        return np.asarray(self.nu(tilde), dtype=float).reshape(tilde.shape[0])


def decay_exponent(datum: BoundaryDatum, spec: DomainSpec) -> float:
    """1 - 2α_k + ε_k, the power of |x̃| in the far-field bound."""
    return 1.0 - 2.0 * spec.alpha[datum.face] + datum.bound_eps


def _face_singular_axes(face: int, spec: DomainSpec) -> list[int]:
    # positions, among the m-1 face coordinates, of the other singular axes
    return [i if i < face else i - 1 for i in range(spec.n) if i != face]


def _directions(face: int, spec: DomainSpec) -> np.ndarray:
    dims = spec.m - 1
    eye = np.eye(dims)
    halton = qmc.Halton(d=dims, scramble=False).random(CERTIFY_DIRECTIONS + 1)[1:]
    dirs = np.vstack([eye, -eye, np.ones((1, dims)), 2.0 * halton - 1.0])
    singular = _face_singular_axes(face, spec)
    dirs[:, singular] = np.abs(dirs[:, singular])
    norms = np.linalg.norm(dirs, axis=1)
    dirs = dirs[norms > 0.0] / norms[norms > 0.0, None]
    return np.unique(dirs, axis=0)


def certify(datum: BoundaryDatum, spec: DomainSpec) -> float:
    """
    Check the declared bound on a radial grid out to |x̃| = 10^3; returns the
    worst observed |ν| / bound ratio and raises UncertifiedDatum above 1.
    """
    spec.check_face(datum.face)
    if datum.is_zero:
        return 0.0
    exponent = decay_exponent(datum, spec)
    radii = CERTIFY_RADII[CERTIFY_RADII >= datum.certify_from]
    dirs = _directions(datum.face, spec)
    points = (radii[:, None, None] * dirs[None, :, :]).reshape(-1, spec.m - 1)
    r2 = np.einsum("ij,ij->i", points, points)
    bound = datum.bound_c * (1.0 + r2) ** (-0.5 * exponent)
    values = np.abs(datum(points))
    if not np.all(np.isfinite(values)):
        raise UncertifiedDatum(f"datum on face S_{datum.face + 1} returned non-finite values")
    ratio = float(np.max(values / bound))
    if ratio > 1.0 + CERTIFY_SLACK:
        worst = points[int(np.argmax(values / bound))]
        raise UncertifiedDatum(
            f"datum on face S_{datum.face + 1} exceeds its bound c={datum.bound_c!r}, "
            f"eps={datum.bound_eps!r} by a factor {ratio:.4g} at x̃={worst.tolist()}"
        )
    logger.debug("certified datum on face %d (%d samples, worst ratio %.3g)",
                 datum.face, len(points), ratio)
    return ratio


# ── Built-in families ──────────────────────────────────────────


def zero_datum(face: int, spec: DomainSpec) -> BoundaryDatum:
    spec.check_face(face)
    return BoundaryDatum(face, lambda t: np.zeros(len(t)), 1.0, 1.0, DatumKind.ZERO, label="zero")


def algebraic_datum(face: int, spec: DomainSpec, amplitude: float = 1.0,
                    eps: float = 0.5) -> BoundaryDatum:
    """ν = A (1 + |x̃|²)^(-(1 - 2α_k + ε)/2), sharp for its own bound."""
    spec.check_face(face)
    power = 1.0 - 2.0 * spec.alpha[face] + eps

    def nu(t: np.ndarray) -> np.ndarray:
        return amplitude * (1.0 + np.einsum("ij,ij->i", t, t)) ** (-0.5 * power)

    origin = (0.0,) * (spec.m - 1)
    return BoundaryDatum(face, nu, abs(amplitude), eps, DatumKind.ALGEBRAIC,
                         features=(DatumFeature(origin, 1.0),), label="algebraic")


def gaussian_datum(face: int, spec: DomainSpec, center: Sequence[float],
                   width: float, amplitude: float = 1.0, eps: float = 0.5) -> BoundaryDatum:
    """ν = A exp(-|x̃ - x̃_0|² / (2w²))."""
    spec.check_face(face)
    center = _face_center(center, spec)
    if not width > 0.0:
        raise PreconditionError(f"width must be positive, got {width!r}")
    power = 1.0 - 2.0 * spec.alpha[face] + eps
    offset = float(np.linalg.norm(center))
    reach = np.linspace(0.0, offset + 60.0 * width + 10.0, 20001)
    envelope = np.exp(-0.5 * (reach / width) ** 2) * (1.0 + (offset + reach) ** 2) ** (0.5 * power)
    bound = abs(amplitude) * float(np.max(envelope)) * 1.02

    def nu(t: np.ndarray) -> np.ndarray:
        d = t - center
        return amplitude * np.exp(-0.5 * np.einsum("ij,ij->i", d, d) / width**2)

    return BoundaryDatum(face, nu, bound, eps, DatumKind.GAUSSIAN,
                         features=(DatumFeature(tuple(center), width),), label="gaussian")


def compact_datum(face: int, spec: DomainSpec, center: Sequence[float],
                  radius: float, amplitude: float = 1.0, eps: float = 0.5) -> BoundaryDatum:
    """Smooth bump A exp(1 - 1/(1 - |x̃ - x̃_0|²/ρ²)) supported in the ball of radius ρ."""
    spec.check_face(face)
    center = _face_center(center, spec)
    if not radius > 0.0:
        raise PreconditionError(f"radius must be positive, got {radius!r}")
    power = 1.0 - 2.0 * spec.alpha[face] + eps
    outer = float(np.linalg.norm(center)) + radius
    bound = abs(amplitude) * (1.0 + outer**2) ** (0.5 * power) * (1.0 + 1e-6)

    def nu(t: np.ndarray) -> np.ndarray:
        d = t - center
        s = np.einsum("ij,ij->i", d, d) / radius**2
        out = np.zeros(len(t))
        inside = s < 1.0
        out[inside] = amplitude * np.exp(1.0 - 1.0 / (1.0 - s[inside]))
        return out

    return BoundaryDatum(face, nu, bound, eps, DatumKind.COMPACT,
                         features=(DatumFeature(tuple(center), radius),), label="compact")


def tabulated_datum(face: int, spec: DomainSpec, axes: Sequence[np.ndarray],
                    values: np.ndarray, bound_c: float, bound_eps: float) -> BoundaryDatum:
    """Linear interpolation on a tensor grid, zero outside it."""
    spec.check_face(face)
    axes = tuple(np.asarray(a, dtype=float) for a in axes)
    if len(axes) != spec.m - 1:
        raise PreconditionError(f"tabulated datum needs {spec.m - 1} axes, got {len(axes)}")
    interpolator = RegularGridInterpolator(axes, np.asarray(values, dtype=float),
                                           method="linear", bounds_error=False, fill_value=0.0)
    centre = tuple(0.5 * (a[0] + a[-1]) for a in axes)
    half = max(0.5 * (a[-1] - a[0]) for a in axes)
    return BoundaryDatum(face, interpolator, bound_c, bound_eps, DatumKind.TABULATED,
                         features=(DatumFeature(centre, half),),
                         breakpoints=tuple(tuple(a.tolist()) for a in axes),
                         label="tabulated")


def tabulated_datum_from_file(face: int, spec: DomainSpec, path: str,
                              bound_c: float, bound_eps: float) -> BoundaryDatum:
    rows = parse_table_file(path)
    axes, values = grid_from_rows(rows, spec.m - 1, source=path)
    return tabulated_datum(face, spec, axes, values, bound_c, bound_eps)


def combine_data(terms: Sequence[tuple[float, BoundaryDatum]]) -> BoundaryDatum:
    """Σ w_i ν_i for data on one face; bound c = Σ|w_i| c_i, ε = min ε_i."""
    terms = [(float(w), d) for w, d in terms if not d.is_zero and w != 0.0]
    if not terms:
        raise PreconditionError("combine_data needs at least one nonzero term")
    faces = {d.face for _, d in terms}
    if len(faces) != 1:
        raise PreconditionError(f"combined data must share one face, got {sorted(faces)}")

    def nu(t: np.ndarray) -> np.ndarray:
        return sum(w * d(t) for w, d in terms)

    features = tuple(f for _, d in terms for f in d.features)
    breakpoints = ()
    for _, d in terms:
        if d.breakpoints:
            breakpoints = d.breakpoints if not breakpoints else tuple(
                tuple(sorted(set(a) | set(b))) for a, b in zip(breakpoints, d.breakpoints))
    return BoundaryDatum(
        faces.pop(), nu,
        bound_c=sum(abs(w) * d.bound_c for w, d in terms),
        bound_eps=min(d.bound_eps for _, d in terms),
        kind=DatumKind.COMBINED,
        features=features,
        breakpoints=breakpoints,
        certify_from=max(d.certify_from for _, d in terms),
        label="+".join(d.label for _, d in terms),
    )


def _face_center(center: Sequence[float], spec: DomainSpec) -> np.ndarray:
    c = np.asarray(center, dtype=float)
    if c.shape != (spec.m - 1,):
        raise PreconditionError(f"feature centre needs {spec.m - 1} face coordinates, got shape {c.shape}")
    return c


def by_face(data: Sequence[BoundaryDatum], spec: DomainSpec) -> list[BoundaryDatum]:
    """One datum per face, zero where none is given."""
    out: list[BoundaryDatum | None] = [None] * spec.n
    for datum in data:
        spec.check_face(datum.face)
        if out[datum.face] is not None:
            raise PreconditionError(f"face S_{datum.face + 1} has more than one datum")
        out[datum.face] = datum
    return [d if d is not None else zero_datum(k, spec) for k, d in enumerate(out)]


def decay_bound(datum: BoundaryDatum, spec: DomainSpec) -> float:
    """
    Constant of the far-field estimate |I_k(ξ)| <= c̃_k / R^ε_k for the
    contribution of this datum,

        c̃_k = 2^(m-n) γ c_k ∫_{R+^(m-1)} dy / (|y|^(1-2α_k+ε_k) (1+|y|²)^β),

    with the integral given by the Lemma 2 closed form.
    """
    consts = kernel_constants(spec)
    dims = spec.m - 1
    t = 0.5 * decay_exponent(datum, spec)
    integral = lemma2_closed_form(Lemma2Params((1.0,) * dims, (2.0,) * dims, (1.0,) * dims,
                                               s=consts.beta, t=t))
    return math.ldexp(consts.gamma * datum.bound_c * integral, spec.m - spec.n)
