"""
Tensor-product quadrature over a face S_k of the hyperoctant.

Each face axis gets a composite rule:

- breakpoints from the features of the integrand (the kernel peak under ξ,
  whose width is the distance from ξ to the face, and the datum's own
  centres and scales), expanded geometrically so that a narrow peak is
  resolved without wasting nodes far away;
- Gauss–Legendre on finite panels, Gauss–Jacobi with the weight x^(2α) on
  the panel touching a singular hyperplane;
- the tails mapped onto (0, 1) by x = B ± L·T(t) with T(t) = t/(1-t)
  (rational) or tan(πt/2) (tangent), graded towards t = 1 because the
  integrands decay only algebraically.

Refinement level ℓ splits every panel into 2^ℓ pieces. The error estimate
of a face integral is the difference between the last two levels, judged
against the integrand's absolute mass.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Sequence

import numpy as np

from errors import PreconditionError, QuadratureNotConverged
from hyperfun.rules import Rule, jacobi_rule
from kernel.domain import DomainSpec
from neumann.data import BoundaryDatum

logger = logging.getLogger(__name__)

# finite breakpoints reach this multiple of the outermost feature
REACH_FACTOR = 2.0
MERGE_TOL = 1e-6


class Transform(str, Enum):
    TANGENT = "tangent"
    RATIONAL = "rational"


@dataclass(frozen=True)
class QuadratureSpec:
    transform: Transform = Transform.RATIONAL
    base_order: int = 8
    refinement_levels: int = 1
    target_rel_tol: float = 1e-3
    tail_panels: int = 6

    def __post_init__(self):
        object.__setattr__(self, "transform", Transform(self.transform))
        if int(self.base_order) < 4:
            raise PreconditionError(f"base_order must be >= 4, got {self.base_order!r}")
        if int(self.refinement_levels) < 1:
            raise PreconditionError(f"refinement_levels must be >= 1, got {self.refinement_levels!r}")
        if not self.target_rel_tol > 0.0:
            raise PreconditionError(f"target_rel_tol must be positive, got {self.target_rel_tol!r}")
        if int(self.tail_panels) < 1:
            raise PreconditionError(f"tail_panels must be >= 1, got {self.tail_panels!r}")
        for name in ("base_order", "refinement_levels", "tail_panels"):
            object.__setattr__(self, name, int(getattr(self, name)))


class AxisFeature(NamedTuple):
    center: float
    width: float


class FaceEstimate(NamedTuple):
    value: np.ndarray
    error: np.ndarray
    nodes: int


# ── One-dimensional rules ──────────────────────────────────────


def _breakpoints(features: Sequence[AxisFeature], lower: float | None,
                 extra: Sequence[float]) -> np.ndarray:
    reach = REACH_FACTOR * max(abs(f.center) + f.width for f in features)
    pts = [float(p) for p in extra]
    for f in features:
        pts.append(f.center)
        steps = max(1, math.ceil(math.log2(max(reach / f.width, 1.0))))
        offsets = f.width * 2.0 ** np.arange(steps + 1)
        pts.extend(f.center + offsets)
        pts.extend(f.center - offsets)
    pts = np.unique(np.asarray(pts, dtype=float))
    if lower is not None:
        pts = np.concatenate(([lower], pts[pts > lower]))
        if len(pts) == 1:
            pts = np.array([lower, lower + reach])
    gap = MERGE_TOL * min(f.width for f in features)
    keep = [pts[0]]
    for p in pts[1:]:
        if p - keep[-1] > gap:
            keep.append(p)
    if lower is None and len(keep) == 1:
        keep = [keep[0] - reach, keep[0] + reach]
    return np.asarray(keep)


def _split(lo: float, hi: float, pieces: int) -> np.ndarray:
    return np.linspace(lo, hi, pieces + 1)


def _tail(start: float, length: float, direction: float, quad: QuadratureSpec,
          pieces: int) -> tuple[np.ndarray, np.ndarray]:
    cuts = [0.0] + [1.0 - 0.5 ** g for g in range(1, quad.tail_panels + 1)] + [1.0]
    ts, ws = [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        edges = _split(lo, hi, pieces)
        for a, b in zip(edges[:-1], edges[1:]):
            t, w = jacobi_rule(a, b, quad.base_order)
            ts.append(t)
            ws.append(w)
    t = np.concatenate(ts)
    w = np.concatenate(ws)
    if quad.transform is Transform.RATIONAL:
        mapped = t / (1.0 - t)
        jac = 1.0 / (1.0 - t) ** 2
    else:
        mapped = np.tan(0.5 * math.pi * t)
        jac = 0.5 * math.pi / np.cos(0.5 * math.pi * t) ** 2
    return start + direction * length * mapped, w * length * jac


def axis_rule(features: Sequence[AxisFeature], quad: QuadratureSpec, level: int,
              lower: float | None = None, weight_exponent: float = 0.0,
              extra: Sequence[float] = ()) -> Rule:
    """
    Composite rule for ∫ x^w f(x) dx over (lower, ∞) when lower is given
    (w = weight_exponent), or ∫ f(x) dx over the real line otherwise.
    """
    pts = _breakpoints(features, lower, extra)
    pieces = 2 ** level
    span = max(pts[-1] - pts[0], max(f.width for f in features))
    xs, ws = [], []
    for i, (a, b) in enumerate(zip(pts[:-1], pts[1:])):
        edges = _split(a, b, pieces)
        for j, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
            if lower is not None and i == 0 and j == 0 and weight_exponent != 0.0:
                x, w = jacobi_rule(lo, hi, quad.base_order, left=weight_exponent)
            else:
                x, w = jacobi_rule(lo, hi, quad.base_order)
                if weight_exponent != 0.0:
                    w = w * x ** weight_exponent
            xs.append(x)
            ws.append(w)
    x, w = _tail(pts[-1], span, 1.0, quad, pieces)
    if weight_exponent != 0.0:
        w = w * x ** weight_exponent
    xs.append(x)
    ws.append(w)
    if lower is None:
        x, w = _tail(pts[0], span, -1.0, quad, pieces)
        xs.append(x)
        ws.append(w)
    return Rule(np.concatenate(xs), np.concatenate(ws))


# ── Face rules ─────────────────────────────────────────────────


def face_rules(face: int, anchor: np.ndarray, datum: BoundaryDatum, spec: DomainSpec,
               quad: QuadratureSpec, level: int) -> list[Rule]:
    """Per-axis rules for the face coordinates (all axes except `face`)."""
    width = float(anchor[face])
    if not width > 0.0:
        raise PreconditionError(f"anchor {anchor.tolist()} lies on face S_{face + 1}")
    rules = []
    for pos, i in enumerate(a for a in range(spec.m) if a != face):
        features = [AxisFeature(float(anchor[i]), width)]
        features += [AxisFeature(f.center[pos], f.scale) for f in datum.features]
        extra = datum.breakpoints[pos] if datum.breakpoints else ()
        if i < spec.n:
            rules.append(axis_rule(features, quad, level, lower=0.0,
                                   weight_exponent=2.0 * spec.alpha[i], extra=extra))
        else:
            rules.append(axis_rule(features, quad, level, extra=extra))
    return rules


def tensor_integrate(face: int, rules: Sequence[Rule], m: int,
                     integrand: Callable[[np.ndarray], np.ndarray],
                     ncomp: int) -> tuple[np.ndarray, np.ndarray, int]:
    """
    Σ w f over the tensor grid of `rules`, with points embedded in R^m at
    x_face = 0. The integrand maps (P, m) points to (P, ncomp) values.
    Returns the sums, the absolute masses and the node count.
    """
    axes = [a for a in range(m) if a != face]
    head, rest = rules[0], rules[1:]
    grids = np.meshgrid(*[r.nodes for r in rest], indexing="ij")
    weights = rest[0].weights
    for r in rest[1:]:
        weights = np.multiply.outer(weights, r.weights)
    weights = np.ravel(weights)
    points = np.zeros((weights.size, m))
    for a, g in zip(axes[1:], grids):
        points[:, a] = g.ravel()

    total = np.zeros(ncomp)
    mass = np.zeros(ncomp)
    for x0, w0 in zip(head.nodes, head.weights):
        points[:, axes[0]] = x0
        values = np.asarray(integrand(points)).reshape(weights.size, ncomp)
        total += w0 * (weights @ values)
        mass += abs(w0) * (np.abs(weights) @ np.abs(values))
    return total, mass, weights.size * len(head.nodes)


def integrate_face(face: int, anchor: np.ndarray, datum: BoundaryDatum, spec: DomainSpec,
                   quad: QuadratureSpec, integrand: Callable[[np.ndarray], np.ndarray],
                   ncomp: int, level: int | None = None) -> FaceEstimate:
    """
    Integrate over S_face with rules built around `anchor`.

    With `level` given, one pass at that level is made and the error is
    reported as NaN. Otherwise levels 0..refinement_levels are computed
    and QuadratureNotConverged is raised when the last two disagree by more
    than target_rel_tol times the absolute mass.
    """
    if level is not None:
        rules = face_rules(face, anchor, datum, spec, quad, level)
        total, _, nodes = tensor_integrate(face, rules, spec.m, integrand, ncomp)
        return FaceEstimate(total, np.full(ncomp, np.nan), nodes)

    previous = None
    nodes = 0
    for lvl in range(quad.refinement_levels + 1):
        rules = face_rules(face, anchor, datum, spec, quad, lvl)
        total, mass, nodes = tensor_integrate(face, rules, spec.m, integrand, ncomp)
        if previous is not None:
            error = np.abs(total - previous)
        previous = total
    logger.debug("face S_%d: %d nodes, delta %s", face + 1, nodes, error)
    if np.any(error > quad.target_rel_tol * mass):
        raise QuadratureNotConverged(
            f"face S_{face + 1} at anchor {anchor.tolist()}: refinement delta "
            f"{error.tolist()} exceeds {quad.target_rel_tol!r} x mass {mass.tolist()}"
        )
    return FaceEstimate(total, error, nodes)
