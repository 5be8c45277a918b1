"""
Parameter and result records for the hypergeometric functions.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

from errors import ParameterPole, PreconditionError
from hyperfun.gamma import is_nonpositive_integer


class FAMethod(str, Enum):
    SERIES = "series"
    INTEGRAL = "integral"


class SeriesResult(NamedTuple):
    value: float
    terms_used: int
    converged: bool
    method: FAMethod


def _as_floats(name: str, values: Sequence[float]) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    for i, v in enumerate(out):
        if not math.isfinite(v):
            raise PreconditionError(f"{name}[{i}] must be finite, got {v!r}")
    return out


@dataclass(frozen=True)
class FAParams:
    """The triple (a, b, c) of the n-variable Lauricella function F_A."""

    a: float
    b: tuple[float, ...]
    c: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", _as_floats("b", self.b))
        object.__setattr__(self, "c", _as_floats("c", self.c))
        if not math.isfinite(self.a):
            raise PreconditionError(f"a must be finite, got {self.a!r}")
        if len(self.b) != len(self.c) or not self.b:
            raise PreconditionError(
                f"b and c need the same non-zero length, got {len(self.b)} and {len(self.c)}"
            )
        for i, ci in enumerate(self.c):
            if is_nonpositive_integer(ci):
                raise ParameterPole(f"c[{i}]={ci!r} is a non-positive integer")

    @property
    def n(self) -> int:
        return len(self.b)

    def raised(self) -> "FAParams":
        """(a+1, b, c)."""
        return FAParams(self.a + 1.0, self.b, self.c)

    def shifted(self, k: int) -> "FAParams":
        """(a+1, b+e_k, c+e_k), the parameters of ∂F_A/∂x_k."""
        b = list(self.b)
        c = list(self.c)
        b[k] += 1.0
        c[k] += 1.0
        return FAParams(self.a + 1.0, tuple(b), tuple(c))

    def select(self, slots: Sequence[int]) -> "FAParams":
        return FAParams(self.a, tuple(self.b[i] for i in slots), tuple(self.c[i] for i in slots))

    def integral_ready(self) -> bool:
        """Whether the Euler integral representation applies (0 < b_i < c_i)."""
        return all(bi > 0.0 and ci - bi > 0.0 for bi, ci in zip(self.b, self.c))


@dataclass(frozen=True)
class EvalOptions:
    rel_tol: float = 1e-13
    max_total_degree: int = 2000
    quadrature_order: int = 24
    # all-nonpositive arguments with Σ|x| above this take the integral path
    series_radius: float = 0.9

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise PreconditionError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if int(self.max_total_degree) < 1:
            raise PreconditionError(f"max_total_degree must be >= 1, got {self.max_total_degree!r}")
        if int(self.quadrature_order) < 2:
            raise PreconditionError(f"quadrature_order must be >= 2, got {self.quadrature_order!r}")
        if not 0.0 < self.series_radius <= 1.0:
            raise PreconditionError(f"series_radius must lie in (0, 1], got {self.series_radius!r}")
        object.__setattr__(self, "max_total_degree", int(self.max_total_degree))
        object.__setattr__(self, "quadrature_order", int(self.quadrature_order))


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True)
class Lemma2Params:
    """Parameters of ∫_{R+^n} ∏x^(p-1) / ((Σ(r x)^q)^t (1 + Σ(r x)^q)^s) dx."""

    p: tuple[float, ...]
    q: tuple[float, ...]
    r: tuple[float, ...]
    s: float
    t: float
    exponent_sum: float = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "p", _as_floats("p", self.p))
        object.__setattr__(self, "q", _as_floats("q", self.q))
        object.__setattr__(self, "r", _as_floats("r", self.r))
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "t", float(self.t))
        n = len(self.p)
        if n == 0 or len(self.q) != n or len(self.r) != n:
            raise PreconditionError("p, q and r need the same non-zero length")
        for name in ("p", "q", "r"):
            for i, v in enumerate(getattr(self, name)):
                if v <= 0.0:
                    raise PreconditionError(f"{name}[{i}] must be positive, got {v!r}")
        if self.s <= 0.0:
            raise PreconditionError(f"s must be positive, got {self.s!r}")
        total = sum(pi / qi for pi, qi in zip(self.p, self.q))
        if not 0.0 < total - self.t < self.s:
            raise PreconditionError(
                f"need 0 < Σp/q - t < s, got Σp/q - t = {total - self.t!r} and s = {self.s!r}"
            )
        object.__setattr__(self, "exponent_sum", total)

    @property
    def n(self) -> int:
        return len(self.p)
