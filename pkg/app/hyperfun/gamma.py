"""
Gamma and Pochhammer machinery in log space.

ln_gamma returns ln|Γ(a)| together with the sign of Γ(a), so ratios of
large gamma values can be formed without overflow.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy import special

from errors import ParameterPole, PreconditionError

POLE_TOL = 64 * np.finfo(float).eps

# Pochhammer symbols up to this length are formed by direct product.
DIRECT_PRODUCT_MAX = 32


class LogGamma(NamedTuple):
    value: float
    sign: int


def is_nonpositive_integer(a: float) -> bool:
    """True when a is 0, -1, -2, ... up to a few ulps."""
    return a < 0.5 and abs(a - round(a)) <= POLE_TOL * max(1.0, abs(a))


def ln_gamma(a: float) -> LogGamma:
    """Return (ln|Γ(a)|, sign Γ(a)); raises ParameterPole at the poles."""
    a = float(a)
    if not math.isfinite(a):
        raise PreconditionError(f"gamma argument must be finite, got {a!r}")
    if is_nonpositive_integer(a):
        raise ParameterPole(f"Γ(a) has a pole at a={a!r}")
    return LogGamma(float(special.gammaln(a)), int(special.gammasgn(a)))


def ln_gamma_ratio(numer: list[float], denom: list[float]) -> LogGamma:
    """ln|∏Γ(numer) / ∏Γ(denom)| with its sign."""
    value = 0.0
    sign = 1
    for a in numer:
        g = ln_gamma(a)
        value += g.value
        sign *= g.sign
    for a in denom:
        g = ln_gamma(a)
        value -= g.value
        sign *= g.sign
    return LogGamma(value, sign)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = Γ(a+k)/Γ(a)."""
    if k < 0 or int(k) != k:
        raise PreconditionError(f"Pochhammer length must be a non-negative integer, got {k!r}")
    k = int(k)
    if k == 0:
        return 1.0
    if k <= DIRECT_PRODUCT_MAX or is_nonpositive_integer(a):
        return float(np.prod(a + np.arange(k, dtype=float)))
    hi = ln_gamma(a + k)
    lo = ln_gamma(a)
    exponent = hi.value - lo.value
    sign = hi.sign * lo.sign
    if exponent > 709.0:
        return sign * math.inf
    return sign * math.exp(exponent)


def log_pochhammer_seq(a: float, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    """
    ln|(a)_k| and sign((a)_k) for k = 0..kmax.

    A factor a+j that vanishes makes every later entry -inf with sign 0,
    which is what a terminating series needs.
    """
    factors = a + np.arange(kmax, dtype=float)
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(factors))
    logabs = np.concatenate(([0.0], np.cumsum(logs)))
    signs = np.concatenate(([1.0], np.cumprod(np.sign(factors))))
    return logabs, signs
