"""
Randomised identity checks for the special-function core.

Each check draws its battery from the generator it is given and reports
the worst relative error against an expected value of 0.
"""

import math

import numpy as np
from scipy import integrate

from hyperfun.gamma import ln_gamma, pochhammer
from hyperfun.gauss import gauss_2f1
from hyperfun.lauricella import fa_adjacent_residual, fa_partial, fa_reflection, lauricella_fa
from hyperfun.lemmas import angular_beta_integral, radial_integral
from hyperfun.params import EvalOptions, FAMethod, FAParams
from verify.oracles import central_difference, semi_infinite_quad
from verify.report import CheckReport, make_report

TIGHT = EvalOptions(rel_tol=1e-15, series_radius=1.0)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


def _report(name, errors, tolerance, seed, **details) -> CheckReport:
    worst = float(np.max(errors)) if len(errors) else 0.0
    return make_report(name, worst, 0.0, tolerance, seed=seed,
                       details=dict(cases=len(errors), **details))


def random_fa_params(rng: np.random.Generator, n: int) -> FAParams:
    """Parameters with 0 < b_i < c_i, so both evaluation paths apply."""
    b = rng.uniform(0.1, 0.9, n)
    c = b + rng.uniform(0.2, 1.5, n)
    return FAParams(float(rng.uniform(0.2, 2.5)), tuple(b), tuple(c))


def random_arguments(rng: np.random.Generator, n: int, radius: float,
                     signs: str = "mixed") -> np.ndarray:
    """n arguments with Σ|x| = radius."""
    share = rng.dirichlet(np.ones(n)) * radius
    if signs == "negative":
        return -share
    return share * rng.choice([-1.0, 1.0], n)


# ── Gamma machinery ────────────────────────────────────────────


def check_legendre_duplication(name: str, rng: np.random.Generator, cases: int,
                               tolerance: float, seed=None) -> CheckReport:
    a = rng.uniform(0.05, 20.0, cases)
    errors = []
    for ai in a:
        lhs = ln_gamma(2.0 * ai).value
        rhs = ((2.0 * ai - 1.0) * math.log(2.0) - 0.5 * math.log(math.pi)
               + ln_gamma(ai).value + ln_gamma(ai + 0.5).value)
        errors.append(abs(math.expm1(rhs - lhs)))
        errors.append(abs(ln_gamma(ai).value - math.lgamma(ai)) / max(1.0, abs(math.lgamma(ai))))
    return _report(name, errors, tolerance, seed)


def check_pochhammer_doubling(name: str, rng: np.random.Generator, cases: int,
                              tolerance: float, seed=None) -> CheckReport:
    errors = []
    for _ in range(cases):
        a = float(rng.uniform(0.05, 10.0))
        m = int(rng.integers(0, 21))
        k = int(rng.integers(0, 21))
        errors.append(_rel(pochhammer(a, m) * pochhammer(a + m, m), pochhammer(a, 2 * m)))
        errors.append(_rel(pochhammer(a, m) * pochhammer(a + m, k), pochhammer(a, m + k)))
    return _report(name, errors, tolerance, seed)


# ── F_A ────────────────────────────────────────────────────────


def check_fa_reduction(name: str, rng: np.random.Generator, points: int,
                       tolerance: float, seed=None) -> CheckReport:
    """The one-variable series against the scalar 2F1 loop."""
    params = random_fa_params(rng, 1)
    errors = []
    for x in np.linspace(-0.9, 0.9, points):
        fa = lauricella_fa(params, [x], TIGHT, method=FAMethod.SERIES).value
        ref = gauss_2f1(params.a, params.b[0], params.c[0], float(x), TIGHT).value
        errors.append(_rel(fa, ref))
    return _report(name, errors, tolerance, seed, a=params.a, b=params.b[0], c=params.c[0])


def check_fa_zero_slot(name: str, rng: np.random.Generator, cases: int,
                       tolerance: float, seed=None) -> CheckReport:
    errors = []
    for _ in range(cases):
        n = int(rng.integers(2, 5))
        params = random_fa_params(rng, n)
        x = random_arguments(rng, n, float(rng.uniform(0.1, 0.7)))
        j = int(rng.integers(0, n))
        keep = [i for i in range(n) if i != j]
        reduced = lauricella_fa(params.select(keep), x[keep], TIGHT).value
        for tiny in (0.0, 1e-17):
            x[j] = tiny
            errors.append(_rel(lauricella_fa(params, x, TIGHT, method=FAMethod.SERIES).value, reduced))
    return _report(name, errors, tolerance, seed)


def check_fa_series_vs_integral(name: str, rng: np.random.Generator, cases: int,
                                max_n: int, tolerance: float, seed=None) -> CheckReport:
    opts = EvalOptions(rel_tol=1e-14)
    errors = []
    for _ in range(cases):
        n = int(rng.integers(1, max_n + 1))
        params = random_fa_params(rng, n)
        x = random_arguments(rng, n, float(rng.uniform(0.05, 0.85)), signs="negative")
        series = lauricella_fa(params, x, opts, method=FAMethod.SERIES).value
        euler = lauricella_fa(params, x, opts, method=FAMethod.INTEGRAL).value
        errors.append(_rel(euler, series))
    return _report(name, errors, tolerance, seed)


def check_fa_reflection(name: str, rng: np.random.Generator, cases: int,
                        max_n: int, tolerance: float, seed=None) -> CheckReport:
    """Integral path beyond the unit simplex against the reflected series."""
    opts = EvalOptions(rel_tol=1e-15)
    errors = []
    for _ in range(cases):
        n = int(rng.integers(1, max_n + 1))
        params = random_fa_params(rng, n)
        x = random_arguments(rng, n, float(rng.uniform(1.0, 8.0)), signs="negative")
        direct = lauricella_fa(params, x, opts).value
        errors.append(_rel(direct, fa_reflection(params, x, opts).value))
    return _report(name, errors, tolerance, seed)


def check_fa_differentiation(name: str, rng: np.random.Generator, cases: int, max_n: int,
                             step: float, tolerance: float, seed=None) -> CheckReport:
    opts = EvalOptions(rel_tol=1e-15)
    errors = []
    for _ in range(cases):
        n = int(rng.integers(1, max_n + 1))
        params = random_fa_params(rng, n)
        x = random_arguments(rng, n, float(rng.uniform(0.05, 0.6)))
        k = int(rng.integers(0, n))
        analytic = fa_partial(params, x, k, opts)
        numeric = central_difference(lambda y: lauricella_fa(params, y, opts).value, x, k, step)
        errors.append(abs(analytic - numeric) / max(1.0, abs(analytic)))
    return _report(name, errors, tolerance, seed, step=step)


def check_fa_adjacent(name: str, rng: np.random.Generator, cases: int, max_n: int,
                      tolerance: float, seed=None) -> CheckReport:
    opts = EvalOptions(rel_tol=1e-15)
    errors = []
    for _ in range(cases):
        n = int(rng.integers(1, max_n + 1))
        params = random_fa_params(rng, n)
        x = random_arguments(rng, n, float(rng.uniform(0.05, 0.6)))
        errors.append(fa_adjacent_residual(params, x, opts))
    return _report(name, errors, tolerance, seed)


# ── One-dimensional integrals ──────────────────────────────────


def check_classical_integrals(name: str, rng: np.random.Generator, cases: int,
                              tolerance: float, seed=None) -> CheckReport:
    errors = []
    for _ in range(cases):
        b = float(rng.uniform(0.5, 3.0))
        z = float(rng.uniform(1.0, 3.0))
        x = float(rng.uniform(-0.5, 1.5))
        y = (x + 1.0) / z + float(rng.uniform(0.5, 2.0))
        numeric = semi_infinite_quad(lambda mu: mu**x * (1.0 + b * mu**z) ** (-y))
        errors.append(_rel(numeric, radial_integral(b, x, y, z)))

        u = float(rng.uniform(0.3, 3.0))
        v = float(rng.uniform(0.3, 3.0))
        angular, _ = integrate.quad(
            lambda th: math.sin(th) ** (2 * u - 1) * math.cos(th) ** (2 * v - 1),
            0.0, 0.5 * math.pi, epsabs=0.0, epsrel=1e-12, limit=200)
        errors.append(_rel(angular, angular_beta_integral(u, v)))
    return _report(name, errors, tolerance, seed)


CHECKS = {
    "legendre_duplication": check_legendre_duplication,
    "pochhammer_doubling": check_pochhammer_doubling,
    "fa_reduction": check_fa_reduction,
    "fa_zero_slot": check_fa_zero_slot,
    "fa_series_vs_integral": check_fa_series_vs_integral,
    "fa_reflection": check_fa_reflection,
    "fa_differentiation": check_fa_differentiation,
    "fa_adjacent": check_fa_adjacent,
    "classical_integrals": check_classical_integrals,
}
