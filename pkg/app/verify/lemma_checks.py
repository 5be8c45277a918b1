"""
Numerical checks of the two limiting/integral lemmas.
"""

import logging
from typing import Sequence

import numpy as np

from errors import PreconditionError
from hyperfun.lauricella import lauricella_fa
from hyperfun.lemmas import lemma1_closed_form, lemma2_closed_form
from hyperfun.params import DEFAULT_OPTIONS, EvalOptions, FAParams, Lemma2Params
from verify.oracles import nested_quad, qmc_integrate, richardson
from verify.report import CheckReport, make_report

logger = logging.getLogger(__name__)

NESTED = "nested"
QMC = "qmc"


def lemma2_integrand(params: Lemma2Params):
    """The lemma's integrand, vectorised over rows of an (N, n) array."""
    p = np.asarray(params.p)
    q = np.asarray(params.q)
    r = np.asarray(params.r)

    def f(x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        power = np.sum((r * x) ** q, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.prod(x ** (p - 1.0), axis=1) * power ** (-params.t) * (1.0 + power) ** (-params.s)
        return np.where(np.isfinite(out), out, 0.0)

    return f


def lemma2_numeric(params: Lemma2Params, method: str, budget: int,
                   transform: str | None = None, seed: int = 0) -> float:
    f = lemma2_integrand(params)
    if method == NESTED:
        if params.n > 2:
            raise PreconditionError(f"nested quadrature is limited to n <= 2, got n={params.n}")
        return nested_quad(lambda *x: float(f(np.array(x))[0]), params.n, budget,
                           transform or "rational")
    if method == QMC:
        if params.n > 4:
            raise PreconditionError(f"QMC is limited to n <= 4, got n={params.n}")
        return qmc_integrate(f, params.n, budget, transform or "tangent", seed=seed)
    raise PreconditionError(f"unknown method {method!r}; expected {NESTED!r} or {QMC!r}")


def check_lemma2_numeric(params: Lemma2Params, method: str, budget: int,
                         tolerance: float = 1e-6, name: str = "lemma2",
                         transform: str | None = None, seed: int = 0) -> CheckReport:
    closed = lemma2_closed_form(params)
    numeric = lemma2_numeric(params, method, budget, transform, seed)
    # relative comparison, whatever the size of the closed form
    return make_report(name, numeric / closed, 1.0, tolerance, seed=seed if method == QMC else None,
                       details={"closed_form": closed, "numeric": numeric, "method": method})


# ── Lemma 1 ────────────────────────────────────────────────────


def lemma1_sequence(a: float, b: Sequence[float], c: Sequence[float], z0: Sequence[float],
                    eps_sequence: Sequence[float], slope: Sequence[float] | None = None,
                    opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """ε^(-Σb) F_A(a, b; c; 1 - z(ε)/ε) with z(ε) = z0 + slope·ε."""
    params = FAParams(a, tuple(b), tuple(c))
    z0 = np.asarray(z0, dtype=float)
    slope = np.zeros_like(z0) if slope is None else np.asarray(slope, dtype=float)
    total_b = float(np.sum(params.b))
    out = []
    for eps in eps_sequence:
        z = z0 + slope * eps
        out.append(eps ** (-total_b) * lauricella_fa(params, 1.0 - z / eps, opts).value)
    return np.asarray(out)


def check_lemma1_limit(a: float, b: Sequence[float], c: Sequence[float], z0: Sequence[float],
                       eps_sequence: Sequence[float], slope: Sequence[float] | None = None,
                       tolerance: float = 1e-3, name: str = "lemma1",
                       opts: EvalOptions = DEFAULT_OPTIONS, seed=None) -> CheckReport:
    """
    Richardson-extrapolate the last two terms of the sequence (error order
    min(1, a - Σb)) and compare with the closed form.
    """
    eps_sequence = [float(e) for e in eps_sequence]
    if len(eps_sequence) < 2:
        raise PreconditionError("need at least two values of ε")
    closed = lemma1_closed_form(a, b, c, z0)
    values = lemma1_sequence(a, b, c, z0, eps_sequence, slope, opts)
    order = min(1.0, a - float(np.sum(b)))
    if order > 0.0 and not np.all(np.asarray(b) == 0.0):
        limit = richardson(values[-2], values[-1], eps_sequence[-2] / eps_sequence[-1], order)
    else:
        limit = float(values[-1])
    errors = np.abs(values - closed) / abs(closed)
    monotone = bool(np.all(np.diff(errors) <= 1e-12))
    report = make_report(name, limit / closed, 1.0, tolerance, seed=seed,
                         details={"closed_form": closed, "extrapolated": limit,
                                  "values": values, "errors": errors, "order": order,
                                  "monotone": monotone})
    if not monotone:
        logger.warning("%s: errors %s do not decrease with ε", name, errors.tolist())
        report = report._replace(passed=False)
    return report


def lemma1_battery(rng: np.random.Generator, sets: int, varying: int) -> list[dict]:
    """Parameter sets for the lemma; the last `varying` of them use z(ε) = z0 + sε."""
    battery = []
    for i in range(sets):
        n = 1 + i % 2
        b = rng.uniform(0.1, 0.4, n)
        c = b + rng.uniform(0.3, 1.0, n)
        a = float(np.sum(b) + rng.uniform(0.6, 1.5))
        z0 = rng.uniform(0.5, 2.0, n)
        slope = rng.uniform(0.5, 1.5, n) if i >= sets - varying else None
        battery.append({"a": a, "b": b.tolist(), "c": c.tolist(), "z0": z0.tolist(),
                        "slope": None if slope is None else slope.tolist()})
    return battery
