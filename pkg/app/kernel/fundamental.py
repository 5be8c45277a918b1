"""
Fundamental solution of

    Σ_i ∂²u/∂x_i² + Σ_j (2α_j/x_j) ∂u/∂x_j = 0     in the hyperoctant,

namely

    q(x, ξ) = γ r^(-2β) F_A(β, α; 2α; σ),   σ_i = -4 x_i ξ_i / r²,

with r = |x - ξ|. All F_A arguments are nonpositive, so every evaluation
goes through the integral representation. The batch functions take a
(P, m) array of x-points against one ξ; the scalar forms wrap them.
"""

from typing import Sequence

import numpy as np

from errors import CoincidentPoints, PreconditionError
from hyperfun.lauricella import lauricella_fa_batch
from hyperfun.params import DEFAULT_OPTIONS, EvalOptions, FAParams
from kernel.domain import DomainSpec, KernelConstants, kernel_constants

# r below this multiple of (1 + |x| + |ξ|) counts as the diagonal.
DIAGONAL_GUARD = 1e-12


def _params(spec: DomainSpec, consts: KernelConstants) -> FAParams:
    return FAParams(consts.beta, spec.alpha, tuple(2.0 * a for a in spec.alpha))


def _geometry(X: np.ndarray, xi: np.ndarray, spec: DomainSpec):
    X = np.atleast_2d(np.asarray(X, dtype=float))
    xi = np.asarray(xi, dtype=float)
    if X.shape[1] != spec.m or xi.shape != (spec.m,):
        raise PreconditionError(f"points must have {spec.m} coordinates")
    diff = X - xi
    r2 = np.einsum("ij,ij->i", diff, diff)
    scale = 1.0 + np.linalg.norm(X, axis=1) + np.linalg.norm(xi)
    if np.any(r2 < (DIAGONAL_GUARD * scale) ** 2):
        raise CoincidentPoints(f"kernel evaluated on its diagonal at ξ={xi.tolist()}")
    sigma = -4.0 * X[:, :spec.n] * xi[:spec.n] / r2[:, None]
    return X, xi, diff, r2, sigma


def kernel_values(X: np.ndarray, xi: Sequence[float], spec: DomainSpec,
                  opts: EvalOptions = DEFAULT_OPTIONS,
                  consts: KernelConstants | None = None) -> np.ndarray:
    """q(x, ξ) for every row x of X."""
    consts = consts or kernel_constants(spec)
    X, xi, _, r2, sigma = _geometry(X, xi, spec)
    fa = lauricella_fa_batch(_params(spec, consts), sigma, opts)
    return consts.gamma_sign * np.exp(consts.log_gamma - consts.beta * np.log(r2)) * fa


def kernel_gradients(X: np.ndarray, xi: Sequence[float], spec: DomainSpec,
                     opts: EvalOptions = DEFAULT_OPTIONS,
                     components: Sequence[int] | None = None,
                     consts: KernelConstants | None = None) -> np.ndarray:
    """
    ∂q/∂ξ_p for every row x of X; returns shape (P, len(components)).

    From the differentiation formula and the contiguous relation:

        ∂q/∂ξ_p = 2βγ r^(-2β-2) [ (x_p - ξ_p) F_A(β+1, α; 2α; σ)
                                  - x_p F_A(β+1, α+e_p; 2α+e_p; σ) ],

    the second term present only for singular axes p < n.
    """
    consts = consts or kernel_constants(spec)
    components = list(range(spec.m)) if components is None else list(components)
    X, xi, diff, r2, sigma = _geometry(X, xi, spec)
    params = _params(spec, consts)
    raised = lauricella_fa_batch(params.raised(), sigma, opts)
    prefactor = consts.gamma_sign * 2.0 * consts.beta * np.exp(
        consts.log_gamma - (consts.beta + 1.0) * np.log(r2))

    out = np.empty((X.shape[0], len(components)))
    for col, p in enumerate(components):
        if not 0 <= p < spec.m:
            raise PreconditionError(f"gradient component {p} out of range for m={spec.m}")
        g = diff[:, p] * raised
        if p < spec.n and np.any(X[:, p] != 0.0):
            g = g - X[:, p] * lauricella_fa_batch(params.shifted(p), sigma, opts)
        out[:, col] = prefactor * g
    return out


def q(x: Sequence[float], xi: Sequence[float], spec: DomainSpec,
      opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    x = spec.point(x)
    xi = spec.point(xi)
    return float(kernel_values(x[None, :], xi, spec, opts)[0])


def q_face(k: int, x_face: Sequence[float], xi: Sequence[float], spec: DomainSpec,
           opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """
    The kernel restricted to the face S_k:

        γ r_k^(-2β) F_A^(n-1)(β, A_k; 2A_k; Φ_k),

    where A_k drops α_k and Φ_k drops the k-th argument (it vanishes on
    x_k = 0). x_face is a full point with x_face[k] == 0.
    """
    spec.check_face(k)
    x = spec.point(x_face)
    xi = spec.point(xi)
    if x[k] != 0.0:
        raise PreconditionError(f"x_face[{k}] must be 0 on face S_{k + 1}, got {x[k]!r}")
    consts = kernel_constants(spec)
    _, _, _, r2, sigma = _geometry(x[None, :], xi, spec)
    keep = [i for i in range(spec.n) if i != k]
    base = float(np.exp(consts.log_gamma - consts.beta * np.log(r2[0]))) * consts.gamma_sign
    if not keep:
        return base
    reduced = FAParams(consts.beta,
                       tuple(spec.alpha[i] for i in keep),
                       tuple(2.0 * spec.alpha[i] for i in keep))
    return base * float(lauricella_fa_batch(reduced, sigma[:, keep], opts)[0])


def grad_xi_q(x: Sequence[float], xi: Sequence[float], spec: DomainSpec,
              opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    x = spec.point(x)
    xi = spec.point(xi)
    return kernel_gradients(x[None, :], xi, spec, opts)[0]


def grad_x_q(x: Sequence[float], xi: Sequence[float], spec: DomainSpec,
             opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """∇_x q, by the symmetry q(x, ξ) = q(ξ, x)."""
    return grad_xi_q(xi, x, spec, opts)
