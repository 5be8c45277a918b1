"""
The hyperoctant Ω = {x ∈ R^m : x_1 > 0, ..., x_n > 0} and the constants of
its fundamental solution.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from errors import PreconditionError
from hyperfun.gamma import ln_gamma


@dataclass(frozen=True)
class DomainSpec:
    m: int
    n: int
    alpha: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(v) for v in self.alpha))
        if int(self.m) != self.m or self.m <= 2:
            raise PreconditionError(f"dimension m must be an integer > 2, got {self.m!r}")
        if int(self.n) != self.n or not 1 <= self.n <= self.m:
            raise PreconditionError(f"singular count n must satisfy 1 <= n <= m, got {self.n!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        if len(self.alpha) != self.n:
            raise PreconditionError(f"need {self.n} exponents, got {len(self.alpha)}")
        for j, a in enumerate(self.alpha):
            if not 0.0 < 2.0 * a < 1.0:
                raise PreconditionError(f"alpha[{j}]={a!r} must satisfy 0 < 2·alpha < 1")

    @property
    def alpha_sum(self) -> float:
        return float(sum(self.alpha))

    def point(self, coords: Sequence[float]) -> np.ndarray:
        """Validate a point of the closed hyperoctant."""
        p = np.asarray(coords, dtype=float)
        if p.shape != (self.m,):
            raise PreconditionError(f"expected a point with {self.m} coordinates, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise PreconditionError(f"point {p.tolist()} has non-finite coordinates")
        if np.any(p[:self.n] < 0.0):
            raise PreconditionError(f"point {p.tolist()} lies outside the closed hyperoctant")
        return p

    def interior_point(self, coords: Sequence[float]) -> np.ndarray:
        p = self.point(coords)
        if np.any(p[:self.n] <= 0.0):
            raise PreconditionError(f"point {p.tolist()} is not interior: first {self.n} coordinates must be > 0")
        return p

    def face_point(self, k: int, coords: Sequence[float]) -> np.ndarray:
        """Embed face coordinates x̃_k (m-1 values) as a point with x_k = 0."""
        self.check_face(k)
        tilde = np.asarray(coords, dtype=float)
        if tilde.shape != (self.m - 1,):
            raise PreconditionError(f"face S_{k + 1} has {self.m - 1} coordinates, got shape {tilde.shape}")
        return self.point(np.insert(tilde, k, 0.0))

    def check_face(self, k: int) -> None:
        if not 0 <= k < self.n:
            raise PreconditionError(f"face index {k} out of range for n={self.n}")


class KernelConstants(NamedTuple):
    beta: float
    log_gamma: float
    gamma_sign: int

    @property
    def gamma(self) -> float:
        return self.gamma_sign * math.exp(self.log_gamma)


def kernel_constants(spec: DomainSpec) -> KernelConstants:
    """
    β = (m-2)/2 + Σα_j and
    γ = 2^(2β-m) Γ(β) / π^(m/2) · ∏ Γ(α_k)/Γ(2α_k), kept as ln γ.
    """
    beta = (spec.m - 2) / 2.0 + spec.alpha_sum
    log_gamma = (2.0 * beta - spec.m) * math.log(2.0) - 0.5 * spec.m * math.log(math.pi)
    g = ln_gamma(beta)
    log_gamma += g.value
    sign = g.sign
    for a in spec.alpha:
        top, bottom = ln_gamma(a), ln_gamma(2.0 * a)
        log_gamma += top.value - bottom.value
        sign *= top.sign * bottom.sign
    return KernelConstants(beta, log_gamma, sign)
