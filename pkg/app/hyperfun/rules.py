"""
Gauss rules on finite intervals, including beta-type endpoint weights.

Node sets are cached per (order, exponents) because the kernel asks for
the same handful of rules millions of times.
"""

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import special

from hyperfun.gamma import ln_gamma_ratio

# Beyond this argument size the beta rule switches to graded panels.
GRADE_THRESHOLD = 2.0


class Rule(NamedTuple):
    nodes: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=512)
def _reference_rule(order: int, left: float, right: float) -> Rule:
    # nodes on [-1, 1] for the weight (1+s)^left (1-s)^right
    if left == 0.0 and right == 0.0:
        s, w = special.roots_legendre(order)
    else:
        s, w = special.roots_jacobi(order, right, left)
    s.flags.writeable = False
    w.flags.writeable = False
    return Rule(s, w)


def jacobi_rule(lo: float, hi: float, order: int,
                left: float = 0.0, right: float = 0.0) -> Rule:
    """
    Rule for ∫_lo^hi (x-lo)^left (hi-x)^right f(x) dx.

    With both exponents zero this is plain Gauss–Legendre.
    """
    s, w = _reference_rule(int(order), float(left), float(right))
    half = 0.5 * (hi - lo)
    nodes = lo + half * (1.0 + s)
    weights = w * half ** (left + right + 1.0)
    return Rule(nodes, weights)


def beta_rule(b: float, c: float, scale: float, order: int) -> Rule:
    """
    Nodes and weights on (0, 1) for the normalized beta weight

        Γ(c)/(Γ(b)Γ(c-b)) t^(b-1) (1-t)^(c-b-1),

    sized for integrands (1 + scale·t + ...)^(-a). For scale above
    GRADE_THRESHOLD the interval is split at 1/scale, 2/scale, ... so the
    near-singular growth of the integrand at t ~ 1/scale is resolved.
    """
    return _beta_rule(float(b), float(c), _bucket(scale), int(order))


def _bucket(scale: float) -> float:
    # quantize to powers of two so the cache sees a small key set
    if scale <= GRADE_THRESHOLD:
        return 0.0
    return float(2.0 ** math.ceil(math.log2(scale)))


@lru_cache(maxsize=1024)
def _beta_rule(b: float, c: float, scale: float, order: int) -> Rule:
    left, right = b - 1.0, c - b - 1.0
    norm = ln_gamma_ratio([c], [b, c - b])
    factor = norm.sign * math.exp(norm.value)

    if scale == 0.0:
        nodes, weights = jacobi_rule(0.0, 1.0, order, left, right)
        return _frozen(nodes, weights * factor)

    cuts = [0.0]
    edge = 1.0 / scale
    while edge < 0.5:
        cuts.append(edge)
        edge *= 2.0
    cuts.append(1.0)

    parts_x, parts_w = [], []
    last = len(cuts) - 2
    for i, (lo, hi) in enumerate(zip(cuts[:-1], cuts[1:])):
        if i == 0:
            x, w = jacobi_rule(lo, hi, order, left=left)
            w = w * (1.0 - x) ** right
        elif i == last:
            x, w = jacobi_rule(lo, hi, order, right=right)
            w = w * x ** left
        else:
            x, w = jacobi_rule(lo, hi, order)
            w = w * x ** left * (1.0 - x) ** right
        parts_x.append(x)
        parts_w.append(w)
    return _frozen(np.concatenate(parts_x), np.concatenate(parts_w) * factor)


def _frozen(nodes: np.ndarray, weights: np.ndarray) -> Rule:
    nodes = np.ascontiguousarray(nodes)
    weights = np.ascontiguousarray(weights)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return Rule(nodes, weights)
