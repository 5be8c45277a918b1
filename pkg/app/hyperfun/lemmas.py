"""
Closed forms of the two limiting/integral lemmas and of the classical
one-dimensional integrals behind them.
"""

import math
from typing import Sequence

from errors import PreconditionError
from hyperfun.gamma import is_nonpositive_integer, ln_gamma, ln_gamma_ratio
from hyperfun.params import Lemma2Params


def lemma1_closed_form(a: float, b: Sequence[float], c: Sequence[float],
                       z0: Sequence[float]) -> float:
    """
    lim_{ε→0} ε^(-Σb) F_A(a, b; c; 1 - z(ε)/ε)
        = Γ(a - Σb)/Γ(a) ∏ Γ(c_k) / (z_k(0)^(b_k) Γ(c_k - b_k)).
    """
    b = [float(v) for v in b]
    c = [float(v) for v in c]
    z0 = [float(v) for v in z0]
    if not (len(b) == len(c) == len(z0)) or not b:
        raise PreconditionError("b, c and z0 need the same non-zero length")
    total_b = sum(b)
    if not a > total_b:
        raise PreconditionError(f"need a > Σb, got a={a!r}, Σb={total_b!r}")
    value = 0.0
    sign = 1
    for k, (bk, ck, zk) in enumerate(zip(b, c, z0)):
        if not ck > bk:
            raise PreconditionError(f"need c[{k}] > b[{k}], got {ck!r} <= {bk!r}")
        if is_nonpositive_integer(ck):
            raise PreconditionError(f"c[{k}]={ck!r} is a non-positive integer")
        if zk == 0.0:
            raise PreconditionError(f"z0[{k}] must be nonzero")
        if bk == 0.0:
            continue
        if zk < 0.0 and bk != round(bk):
            raise PreconditionError(f"z0[{k}]={zk!r} < 0 with non-integer b[{k}] gives a complex power")
        ratio = ln_gamma_ratio([ck], [ck - bk])
        value += ratio.value - bk * math.log(abs(zk))
        sign *= ratio.sign
        if zk < 0.0 and int(round(bk)) % 2:
            sign = -sign
    head = ln_gamma_ratio([a - total_b], [a])
    return sign * head.sign * math.exp(value + head.value)


def lemma2_closed_form(params: Lemma2Params) -> float:
    """
    ∫_{R+^n} ∏ x_k^(p_k-1) (Σ (r_k x_k)^(q_k))^(-t) (1 + Σ (r_k x_k)^(q_k))^(-s) dx
        = ∏Γ(p_k/q_k) Γ(P-t) Γ(s+t-P) / (∏q_k ∏r_k^(p_k) Γ(P) Γ(s)),

    with P = Σ p_k/q_k.
    """
    total = params.exponent_sum
    numer = [pk / qk for pk, qk in zip(params.p, params.q)]
    numer += [total - params.t, params.s + params.t - total]
    log_value = ln_gamma_ratio(numer, [total, params.s]).value
    log_value -= sum(math.log(qk) for qk in params.q)
    log_value -= sum(pk * math.log(rk) for pk, rk in zip(params.p, params.r))
    return math.exp(log_value)


def radial_integral(b: float, x: float, y: float, z: float) -> float:
    """
    ∫_0^∞ μ^x (1 + b μ^z)^(-y) dμ = b^(-(x+1)/z) / z · B((x+1)/z, y - (x+1)/z),

    for b, z > 0 and 0 < (x+1)/z < y.
    """
    if b <= 0.0 or z <= 0.0:
        raise PreconditionError("need b > 0 and z > 0")
    ratio = (x + 1.0) / z
    if not 0.0 < ratio < y:
        raise PreconditionError(f"need 0 < (x+1)/z < y, got (x+1)/z={ratio!r}, y={y!r}")
    beta = ln_gamma_ratio([ratio, y - ratio], [y])
    return math.exp(beta.value - ratio * math.log(b) - math.log(z))


def angular_beta_integral(x: float, y: float) -> float:
    """∫_0^{π/2} sin^(2x-1)θ cos^(2y-1)θ dθ = Γ(x)Γ(y) / (2Γ(x+y)), x, y > 0."""
    if x <= 0.0 or y <= 0.0:
        raise PreconditionError("need x > 0 and y > 0")
    return 0.5 * math.exp(ln_gamma(x).value + ln_gamma(y).value - ln_gamma(x + y).value)
