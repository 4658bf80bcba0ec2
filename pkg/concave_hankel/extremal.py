"""
Numerical estimate of M(p) = sup |phi_p| / 18P^3 over the closed polydisk.

phi_p is affine in sigma2, so for fixed (sigma0, sigma1) the best sigma2
is unimodular and the sup over it is |base| + |slope|. The search scans a
polar grid and seeded random points in (sigma0, sigma1), adds starts on
the lower-bound slice (t, -1, 0), then polishes the best starts with
Nelder-Mead in the six polar coordinates.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .body import ParamTriple, sample_polydisk
from .conf import settings
from .exceptions import InvalidInput
from .hankel import h_p, lower_bound_M, phi_p, phi_p_affine, upper_bound_M
from .moebius import PoleParam
from .utils import unimodular

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtremalReport:
    p: float
    m_estimate: float
    arg_sigma: ParamTriple
    lower: float
    upper: float
    iterations: int
    grid: int
    slice_value: float
    sigma2_coefficient: float

    def as_dict(self):
        moduli, arguments = self.arg_sigma.to_polar()
        return {
            'p': self.p,
            'm_estimate': self.m_estimate,
            'arg_sigma': {'moduli': moduli, 'arguments': arguments},
            'lower': self.lower,
            'upper': self.upper,
            'iterations': self.iterations,
            'grid': self.grid,
            'slice_value': self.slice_value,
            'sigma2_coefficient': self.sigma2_coefficient,
        }


def best_sigma2(pp, s0, s1):
    """(sup over |sigma2| <= 1 of |phi_p|, a sigma2 attaining it, |slope|)."""
    base, slope = phi_p_affine(pp, s0, s1)
    return np.abs(base) + np.abs(slope), unimodular(base * np.conj(slope)), np.abs(slope)


def _polar_grid(grid, modulus_grid):
    moduli = np.linspace(0, 1, modulus_grid)
    points = (moduli[:, None] * np.exp(2j * np.pi * np.arange(grid) / grid)).ravel()
    # Every modulus-0 row collapses to the origin.
    points = np.unique(points)
    s0, s1 = np.meshgrid(points, points, indexing='ij')
    return s0.ravel(), s1.ravel()


def _slice_starts(pp):
    """sigma0 values on the (t, -1, 0) slice: the lower-bound point and the slice maximum."""
    result = minimize_scalar(lambda t: -h_p(pp, t), bounds=(0, 1), method='bounded')
    return np.array([7 / (4 * pp.P), result.x])


def _to_sigma(x):
    moduli = np.clip(x[:3], 0, 1)
    return moduli * np.exp(1j * x[3:])


def _to_polar(sigma):
    sigma = np.asarray(sigma, dtype=complex)
    return np.concatenate([np.abs(sigma), np.angle(sigma)])


def estimate_M(pp, grid=None, refine_iters=None, seed=None):
    grid = settings.GRID if grid is None else grid
    refine_iters = settings.ITERS if refine_iters is None else refine_iters
    seed = settings.SEED if seed is None else seed
    if grid < 8:
        raise InvalidInput('grid must be at least 8 (got %r).' % grid)
    if refine_iters < 0:
        raise InvalidInput('refine_iters must be nonnegative (got %r).' % refine_iters)

    s0, s1 = _polar_grid(grid, settings.MODULUS_GRID)
    random = sample_polydisk(np.random.default_rng(seed), settings.RANDOM_STARTS)
    slice_s0 = _slice_starts(pp)
    s0 = np.concatenate([s0, random.x0, slice_s0])
    s1 = np.concatenate([s1, random.x1, -np.ones(slice_s0.size)])
    values, sigma2, _ = best_sigma2(pp, s0, s1)
    logger.debug('p=%s: coarse pass over %d points, best %r.', pp.p, values.size, float(values.max()))

    # Descending value; exact ties fall back to the parameters.
    order = np.lexsort((s1.imag, s1.real, s0.imag, s0.real, -values))
    starts = list(order[:settings.STARTS])
    starts += [i for i in range(values.size - slice_s0.size, values.size) if i not in starts]

    best_value, best_sigma = -np.inf, None
    for index in starts:
        candidate = np.array([s0[index], s1[index], sigma2[index]])
        value, sigma = _refine(pp, candidate, refine_iters)
        if value > best_value:
            best_value, best_sigma = value, sigma

    _, _, slope = best_sigma2(pp, best_sigma[0], best_sigma[1])
    scale = 18 * pp.P ** 3
    report = ExtremalReport(
        p=pp.p,
        m_estimate=float(best_value / scale),
        arg_sigma=ParamTriple(*(complex(x) for x in best_sigma)),
        lower=lower_bound_M(pp),
        upper=float(upper_bound_M(pp)),
        iterations=refine_iters,
        grid=grid,
        slice_value=float(h_p(pp, 7 / (4 * pp.P))),
        sigma2_coefficient=float(slope),
    )
    logger.info('p=%s: M(p) ~ %.9f (bounds %.9f, %.9f).', pp.p, report.m_estimate, report.lower, report.upper)
    return report


def _refine(pp, sigma, refine_iters):
    """
    Nelder-Mead from sigma. Returns the best value seen along the run,
    with sigma2 re-solved analytically at every iterate.
    """
    def polish(candidate):
        value, sigma2, _ = best_sigma2(pp, candidate[0], candidate[1])
        return float(value), np.array([candidate[0], candidate[1], complex(sigma2)])

    best = list(polish(sigma))
    if refine_iters == 0:
        return tuple(best)

    def callback(xk):
        value, candidate = polish(_to_sigma(xk))
        if value > best[0]:
            best[:] = [value, candidate]

    minimize(
        lambda x: -abs(phi_p(pp, _to_sigma(x))),
        _to_polar(sigma),
        method='Nelder-Mead',
        callback=callback,
        options={'maxiter': refine_iters},
    )
    return tuple(best)


def sweep(p_values=None, grid=None, refine_iters=None, seed=None):
    p_values = settings.P_SWEEP if p_values is None else p_values
    return [estimate_M(PoleParam(p), grid=grid, refine_iters=refine_iters, seed=seed) for p in sorted(p_values)]
