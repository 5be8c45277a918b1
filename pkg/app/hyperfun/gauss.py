"""
Gauss hypergeometric function 2F1 for real arguments x < 1.
"""

import logging

from errors import NonConvergence, OutsideDomain, ParameterPole
from hyperfun.gamma import is_nonpositive_integer
from hyperfun.lauricella import lauricella_fa
from hyperfun.params import DEFAULT_OPTIONS, EvalOptions, FAMethod, FAParams, SeriesResult

logger = logging.getLogger(__name__)


def gauss_2f1(a: float, b: float, c: float, x: float,
              opts: EvalOptions = DEFAULT_OPTIONS) -> SeriesResult:
    """
    Term-by-term 2F1(a, b; c; x).

    For x <= -series_radius with 0 < b < c (or 0 < a < c, using the symmetry
    in a and b) the one-variable Euler integral is used instead, which also
    covers x <= -1 where the series diverges.
    """
    if is_nonpositive_integer(c):
        raise ParameterPole(f"c={c!r} is a non-positive integer")
    if x >= 1.0:
        raise OutsideDomain(f"2F1 is only evaluated for x < 1, got {x!r}")

    if x <= -opts.series_radius:
        for top, bottom in ((a, b), (b, a)):
            if 0.0 < bottom < c:
                params = FAParams(top, (bottom,), (c,))
                return lauricella_fa(params, (x,), opts, method=FAMethod.INTEGRAL)
        if x <= -1.0:
            raise OutsideDomain(
                f"2F1 at x={x!r} needs 0 < b < c or 0 < a < c for the integral path"
            )

    term = 1.0
    total = 1.0
    quiet = 0
    for k in range(opts.max_total_degree):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if abs(term) <= opts.rel_tol * abs(total):
            quiet += 1
            if quiet == 2:
                return SeriesResult(total, k + 2, True, FAMethod.SERIES)
        else:
            quiet = 0
    logger.debug("2F1 series stalled at degree %d for x=%r", opts.max_total_degree, x)
    raise NonConvergence(f"2F1 series not converged after {opts.max_total_degree} terms")
