"""
The Lauricella function F_A of n variables.

Two evaluation paths:

- the multi-index series, summed by total-degree shells, inside the
  simplex Σ|x_i| < 1 (see hyperfun.series);
- the Euler-type integral

      ∏ Γ(c_i)/(Γ(b_i)Γ(c_i-b_i)) ∫_{[0,1]^n} ∏ t_i^(b_i-1)(1-t_i)^(c_i-b_i-1)
          (1 - Σ x_i t_i)^(-a) dt

  for nonpositive arguments with 0 < b_i < c_i, where the base is >= 1 and
  the tensor Gauss–Jacobi rule is stable for any argument size.

Slots with x_i = 0 or b_i = 0 contribute only their constant term and are
dropped before either path runs.
"""

import logging
from typing import Sequence

import numpy as np

from errors import OutsideDomain, PreconditionError
from hyperfun.params import DEFAULT_OPTIONS, EvalOptions, FAMethod, FAParams, SeriesResult
from hyperfun.rules import beta_rule
from hyperfun.series import shell_series

logger = logging.getLogger(__name__)

# Upper bound on elements in one (rows x nodes) block of the integral path.
BLOCK_ELEMENTS = 4_000_000
# Tensor grids beyond this many trailing nodes are refused.
MAX_TRAILING_NODES = 20_000_000


def _check_arguments(params: FAParams, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != params.n:
        raise PreconditionError(f"expected {params.n} arguments, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise OutsideDomain(f"non-finite F_A argument {x.tolist()}")
    return x


def _active_slots(params: FAParams, columns: np.ndarray) -> list[int]:
    return [i for i in range(params.n) if params.b[i] != 0.0 and np.any(columns[..., i] != 0.0)]


def lauricella_fa(params: FAParams, x: Sequence[float],
                  opts: EvalOptions = DEFAULT_OPTIONS,
                  method: FAMethod | None = None) -> SeriesResult:
    """
    Evaluate F_A(a, b; c; x).

    Without an explicit method the series is used when Σ|x_i| < 1, except
    that all-nonpositive arguments beyond opts.series_radius go to the
    integral. OutsideDomain is raised when the chosen path does not apply.
    """
    x = _check_arguments(params, x)
    slots = _active_slots(params, x)
    if not slots:
        return SeriesResult(1.0, 1, True, method or FAMethod.SERIES)
    sub = params.select(slots)
    xs = x[slots]

    radius = float(np.sum(np.abs(xs)))
    integral_ok = bool(np.all(xs <= 0.0)) and sub.integral_ready()
    if method is None:
        if radius < 1.0 and (radius <= opts.series_radius or not integral_ok):
            method = FAMethod.SERIES
        elif integral_ok:
            method = FAMethod.INTEGRAL
        else:
            raise OutsideDomain(
                f"F_A arguments {x.tolist()} lie outside the series domain and "
                f"the integral representation needs x <= 0 and 0 < b < c"
            )
    logger.debug("F_A n=%d radius=%.3g via %s", sub.n, radius, method.value)

    if method is FAMethod.SERIES:
        if radius >= 1.0:
            raise OutsideDomain(f"series needs Σ|x| < 1, got {radius!r}")
        return shell_series(sub, xs, opts)

    if not integral_ok:
        raise OutsideDomain(
            f"integral representation needs x <= 0 and 0 < b < c "
            f"(x={xs.tolist()}, b={sub.b}, c={sub.c})"
        )
    values, nodes = _euler_integral(sub, xs[None, :], opts)
    return SeriesResult(float(values[0]), nodes, True, FAMethod.INTEGRAL)


def lauricella_fa_batch(params: FAParams, X: np.ndarray,
                        opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """
    F_A at every row of X (shape (P, n)) through the integral path.

    All entries must be nonpositive. Columns that are identically zero are
    dropped, so a row set lying on a face hyperplane is evaluated with the
    reduced (n-1)-variable function.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != params.n:
        raise PreconditionError(f"expected shape (P, {params.n}), got {X.shape}")
    if X.shape[0] == 0:
        return np.empty(0)
    if np.any(X > 0.0) or not np.all(np.isfinite(X)):
        raise OutsideDomain("batch F_A evaluation needs finite nonpositive arguments")
    slots = _active_slots(params, X)
    if not slots:
        return np.ones(X.shape[0])
    sub = params.select(slots)
    if not sub.integral_ready():
        raise OutsideDomain(f"integral representation needs 0 < b < c (b={sub.b}, c={sub.c})")
    values, _ = _euler_integral(sub, X[:, slots], opts)
    return values


def _tensor(rules) -> tuple[np.ndarray, np.ndarray]:
    grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    weights = rules[0].weights
    for r in rules[1:]:
        weights = np.multiply.outer(weights, r.weights)
    return nodes, np.ravel(weights)


def _euler_integral(params: FAParams, X: np.ndarray,
                    opts: EvalOptions) -> tuple[np.ndarray, int]:
    rules = [
        beta_rule(bi, ci, float(np.max(-X[:, i])), opts.quadrature_order)
        for i, (bi, ci) in enumerate(zip(params.b, params.c))
    ]
    head, rest = rules[0], rules[1:]
    if rest:
        trailing, trailing_w = _tensor(rest)
    else:
        trailing, trailing_w = np.zeros((1, 0)), np.ones(1)
    width = len(trailing_w)
    if width > MAX_TRAILING_NODES:
        raise OutsideDomain(f"integral grid of {width * len(head.nodes)} nodes is too large")

    out = np.empty(X.shape[0])
    rows = max(1, BLOCK_ELEMENTS // width)
    for start in range(0, X.shape[0], rows):
        block = X[start:start + rows]
        base = 1.0 - block[:, 1:] @ trailing.T
        acc = np.zeros(block.shape[0])
        for t0, w0 in zip(head.nodes, head.weights):
            acc += w0 * (np.power(base - block[:, :1] * t0, -params.a) @ trailing_w)
        out[start:start + rows] = acc
    return out, width * len(head.nodes)


def fa_partial(params: FAParams, x: Sequence[float], k: int,
               opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """∂F_A/∂x_k = (a b_k / c_k) F_A(a+1, b+e_k; c+e_k; x)."""
    if not 0 <= k < params.n:
        raise PreconditionError(f"slot {k} out of range for n={params.n}")
    coef = params.a * params.b[k] / params.c[k]
    if coef == 0.0:
        return 0.0
    return coef * lauricella_fa(params.shifted(k), x, opts).value


def fa_adjacent_residual(params: FAParams, x: Sequence[float],
                         opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """
    Residual of the contiguous relation

        Σ_k (b_k/c_k) x_k F_A(a+1, b+e_k; c+e_k; x) = F_A(a+1, b; c; x) - F_A(a, b; c; x)

    as |LHS - RHS| / max(1, |RHS|). Multiplying through by a gives the
    form whose left coefficients match the differentiation formula.
    """
    x = _check_arguments(params, x)
    lhs = 0.0
    for k in range(params.n):
        if x[k] == 0.0 or params.b[k] == 0.0:
            continue
        lhs += params.b[k] / params.c[k] * x[k] * lauricella_fa(params.shifted(k), x, opts).value
    rhs = lauricella_fa(params.raised(), x, opts).value - lauricella_fa(params, x, opts).value
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def fa_reflection(params: FAParams, x: Sequence[float],
                  opts: EvalOptions = DEFAULT_OPTIONS) -> SeriesResult:
    """
    F_A through the all-slot reflection

        F_A(a, b; c; x) = (1 - Σx)^(-a) F_A(a, c-b; c; x / (Σx - 1)),

    valid for nonpositive x. The transformed arguments lie in [0, 1) with a
    sum below one, so the series applies; this gives an evaluation that
    shares nothing with the integral path.
    """
    x = _check_arguments(params, x)
    if np.any(x > 0.0):
        raise OutsideDomain("reflection needs nonpositive arguments")
    total = float(np.sum(x))
    mirrored = FAParams(params.a, tuple(ci - bi for bi, ci in zip(params.b, params.c)), params.c)
    inner = lauricella_fa(mirrored, x / (total - 1.0), opts, method=FAMethod.SERIES)
    return SeriesResult((1.0 - total) ** (-params.a) * inner.value,
                        inner.terms_used, inner.converged, FAMethod.SERIES)
