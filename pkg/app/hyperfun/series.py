"""
Total-degree shell summation of the Lauricella F_A series.

The K-th shell of F_A is (a)_K times the K-th coefficient of the product of
the one-variable series Σ_k (b_i)_k x_i^k / ((c_i)_k k!). Those products are
formed as discrete convolutions in log space (scipy's signed logsumexp), so
large Pochhammer ratios never overflow. The absolute mass of each shell is
convolved alongside and used as the truncation certificate.
"""

import logging

import numpy as np
from scipy import special

from errors import NonConvergence
from hyperfun.gamma import log_pochhammer_seq
from hyperfun.params import EvalOptions, FAMethod, FAParams, SeriesResult

logger = logging.getLogger(__name__)

INITIAL_SHELLS = 64


def _axis_coefficients(b: float, c: float, x: float, kmax: int):
    lb, sb = log_pochhammer_seq(b, kmax)
    lc, sc = log_pochhammer_seq(c, kmax)
    k = np.arange(kmax + 1, dtype=float)
    logabs = lb - lc - special.gammaln(k + 1.0) + k * np.log(abs(x))
    signs = sb * sc * np.sign(x) ** np.arange(kmax + 1)
    return logabs, signs


def _log_convolve(la, sa, lb, sb):
    size = len(la)
    idx = np.arange(size)
    lag = idx[:, None] - idx[None, :]
    inside = lag >= 0
    lag = np.where(inside, lag, 0)
    terms = np.where(inside, la[None, :] + lb[lag], -np.inf)
    signs = np.where(inside, sa[None, :] * sb[lag], 0.0)
    return special.logsumexp(terms, axis=1, b=signs, return_sign=True)


def _shells(params: FAParams, x: np.ndarray, kmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Signed shell sums and their absolute masses for K = 0..kmax."""
    logv = absv = sgn = None
    for bi, ci, xi in zip(params.b, params.c, x):
        la, sa = _axis_coefficients(bi, ci, xi, kmax)
        if logv is None:
            logv, sgn, absv = la, sa, la
            continue
        logv, sgn = _log_convolve(logv, sgn, la, sa)
        absv, _ = _log_convolve(absv, np.ones_like(sa), la, np.abs(sa))
    lp, sp = log_pochhammer_seq(params.a, kmax)
    with np.errstate(over="ignore"):
        signed = sp * sgn * np.exp(lp + logv)
        mass = np.abs(sp) * np.exp(lp + absv)
    return signed, mass


def shell_series(params: FAParams, x: np.ndarray, opts: EvalOptions) -> SeriesResult:
    """
    Sum F_A(a, b; c; x) shell by shell.

    Stops at the first K where shells K-1 and K both carry absolute mass
    below rel_tol·|partial sum|. The shell cap doubles from INITIAL_SHELLS up
    to opts.max_total_degree.
    """
    kmax = min(INITIAL_SHELLS, opts.max_total_degree)
    while True:
        signed, mass = _shells(params, x, kmax)
        partial = np.cumsum(signed)
        quiet = mass <= opts.rel_tol * np.abs(partial)
        hits = np.flatnonzero(quiet[1:] & quiet[:-1])
        if hits.size:
            stop = int(hits[0]) + 1
            logger.debug("F_A series stopped at shell %d (cap %d)", stop, kmax)
            return SeriesResult(float(partial[stop]), stop + 1, True, FAMethod.SERIES)
        if not np.all(np.isfinite(partial)):
            raise NonConvergence(f"F_A series overflowed before shell {kmax}")
        if kmax >= opts.max_total_degree:
            raise NonConvergence(
                f"F_A series not converged after {kmax} shells "
                f"(last shell {mass[-1]:.3e}, partial sum {partial[-1]:.3e})"
            )
        kmax = min(2 * kmax, opts.max_total_degree)
