import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import directed_hausdorff
from scipy.stats import qmc

from .conf import settings
from .exceptions import DegenerateBoundary, InvalidInput
from .hankel import H_from_sigma, omega_map
from .moebius import PoleParam
from .utils import Decision

logger = logging.getLogger(__name__)

LIMIT_CURVES = {
    # p -> 1
    'cardioid': lambda z: -(1 + z) ** 2 / 4,
    # p -> 0
    'circle': lambda z: -z,
}


@dataclass(frozen=True)
class RegionSample:
    """
    A point cloud and a closed boundary polyline (first point repeated at
    the end) approximating a planar region.
    """
    points: np.ndarray
    boundary: np.ndarray
    meta: dict = field(default_factory=dict)


def _circle(n_theta):
    return np.exp(2j * np.pi * np.arange(n_theta) / n_theta)


def _close(polyline):
    polyline = np.asarray(polyline, dtype=complex)
    if polyline.size and polyline[0] != polyline[-1]:
        polyline = np.append(polyline, polyline[0])
    return polyline


def radial_boundary(points, bins):
    """
    The farthest point from the centroid in each of `bins` equal direction
    sectors, in counterclockwise order.
    """
    points = np.asarray(points, dtype=complex)
    offsets = points - points.mean()
    angles = np.angle(offsets) % (2 * np.pi)
    sector = np.minimum((angles * bins / (2 * np.pi)).astype(int), bins - 1)
    # Sorted by sector, then by radius; the last entry of each sector wins.
    order = np.lexsort((np.abs(offsets), sector))
    last = np.append(sector[order][1:] != sector[order][:-1], True)
    return _close(points[order[last]])


def sample_region_H(pp, n_samples=None, seed=None, bins=None, n_theta=None):
    """
    Sample H(Co_p) = {phi_p(sigma)/18P^3}: quasi-random sigma in the
    polydisk, the same angles with every modulus set to 1, the Omega_p
    boundary slice (e^(i theta), 0, 0) at n_theta angles (default: bins),
    and the lower-bound slice (t, -1, 0).

    meta['slack'] is the farthest any sampled point lies outside the
    boundary polyline, i.e. how deep its chords cut into the region.
    """
    n_samples = settings.SAMPLES if n_samples is None else n_samples
    seed = settings.SEED if seed is None else seed
    bins = settings.DIRECTION_BINS if bins is None else bins
    n_theta = bins if n_theta is None else n_theta
    if n_samples < 1:
        raise InvalidInput('n_samples must be positive (got %r).' % n_samples)
    if n_theta < 3:
        raise InvalidInput('n_theta must be at least 3 (got %r).' % n_theta)

    sampler = qmc.Halton(d=6, rng=np.random.default_rng(seed))
    u = sampler.random(n_samples)
    moduli, arguments = np.sqrt(u[:, :3]).T, 2 * np.pi * u[:, 3:].T
    rotations = np.exp(1j * arguments)
    interior = moduli * rotations

    zeros = np.zeros(n_theta, dtype=complex)
    t = np.linspace(0, 1, bins)
    slices = [
        interior,
        rotations,
        np.array([_circle(n_theta), zeros, zeros]),
        np.array([t, -np.ones(bins), np.zeros(bins)]),
    ]
    sigma = np.concatenate(slices, axis=1)
    points = H_from_sigma(pp, sigma)
    boundary = radial_boundary(points, bins)
    slack = _outside_depth(points, boundary)
    logger.debug('Sampled %d points of H(Co_p) for p=%s; boundary slack %.3g.', points.size, pp.p, slack)
    return RegionSample(
        points=points,
        boundary=boundary,
        meta={
            'p': pp.p, 'n_samples': n_samples, 'seed': seed, 'bins': bins, 'n_theta': n_theta,
            'slack': slack, 'kind': 'hankel',
        },
    )


def sample_omega_boundary(pp, n_theta):
    if n_theta < 16:
        raise InvalidInput('n_theta must be at least 16 (got %r).' % n_theta)
    boundary = _close(omega_map(pp, _circle(n_theta)))
    return RegionSample(
        points=boundary[:-1],
        boundary=boundary,
        meta={'p': pp.p, 'n_theta': n_theta, 'kind': 'omega'},
    )


def _distance_to_polyline(z, polyline):
    start, edge = polyline[:-1], np.diff(polyline)
    length = np.abs(edge) ** 2
    t = np.clip(((z - start) * np.conj(edge)).real / np.where(length > 0, length, 1), 0, 1)
    return np.min(np.abs(z - (start + t * edge)))


def winding_number(z, polyline):
    start, end = polyline[:-1], polyline[1:]
    edge = end - start
    # > 0 when z is left of the edge.
    is_left = edge.real * (z - start).imag - (z - start).real * edge.imag
    upward = (start.imag <= z.imag) & (end.imag > z.imag) & (is_left > 0)
    downward = (start.imag > z.imag) & (end.imag <= z.imag) & (is_left < 0)
    return int(np.count_nonzero(upward) - np.count_nonzero(downward))


def contains(region, z, tol=None):
    tol = settings.ALGEBRA_TOLERANCE if tol is None else tol
    polyline = _close(region.boundary)
    if np.unique(polyline).size < 3:
        raise DegenerateBoundary('A boundary needs at least 3 distinct points (got %d).' % np.unique(polyline).size)
    z = complex(z)
    if _distance_to_polyline(z, polyline) <= tol:
        return Decision.BOUNDARY
    return Decision.INSIDE if winding_number(z, polyline) else Decision.OUTSIDE


def _outside_depth(points, polyline):
    depths = [_distance_to_polyline(z, polyline) for z in points if not winding_number(z, polyline)]
    return float(max(depths, default=0.0))


def check_omega_in_region(pp, region, n_theta):
    """
    Whether every sampled Omega_p boundary point lies in a sampled H(Co_p),
    up to the region's own chord slack.
    """
    tol = region.meta.get('slack', 0.0) + settings.ALGEBRA_TOLERANCE
    decisions = [contains(region, z, tol=tol) for z in sample_omega_boundary(pp, n_theta).points]
    outside = sum(decision is Decision.OUTSIDE for decision in decisions)
    if outside:
        logger.debug('%d of %d Omega_%s boundary points outside H(Co_p).', outside, len(decisions), pp.p)
    return not outside


def check_omega_monotone(p_small, p_large, n_theta):
    """Whether the sampled boundary of Omega_(p_large) lies in Omega_(p_small)."""
    if not 0 < p_small < p_large < 1:
        raise InvalidInput('Need 0 < p_small < p_large < 1 (got %r, %r).' % (p_small, p_large))
    small, large = PoleParam(p_small), PoleParam(p_large)
    outer = sample_omega_boundary(small, n_theta)
    t = small.P ** 2
    step = 2 * np.pi / n_theta
    # Chords of the outer curve cut inside it by at most the sagitta
    # (t + 2) step^2 / 8t; allow twice that.
    tol = (t + 2) * step ** 2 / (4 * t)
    decisions = [contains(outer, z, tol=tol) for z in sample_omega_boundary(large, n_theta).points]
    contacts = sum(decision is Decision.BOUNDARY for decision in decisions)
    logger.debug('Omega_%s in Omega_%s: %d boundary contacts.', p_large, p_small, contacts)
    return all(decisions)


def omega_limit_curve(kind, n_theta):
    try:
        curve = LIMIT_CURVES[kind]
    except KeyError:
        raise InvalidInput('Unknown limit curve %r; choose from %s.' % (kind, ', '.join(sorted(LIMIT_CURVES))))
    return _close(curve(_circle(n_theta)))


def _as_plane(points):
    return np.column_stack([points.real, points.imag])


def omega_limit_distance(pp, kind, n_theta):
    """Symmetric Hausdorff distance between the Omega_p boundary and a limit curve."""
    a = _as_plane(sample_omega_boundary(pp, n_theta).boundary)
    b = _as_plane(omega_limit_curve(kind, n_theta))
    return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])


def omega_flow_normal(t, theta):
    """
    Real part of the outer normal of the Omega boundary at angle theta
    against its velocity in t; positive on (0, 2 pi) for t > 4.
    """
    return t * (t - 2 + 2 * np.cos(theta)) / (4 * np.sin(theta / 2) ** 2)


def omega_is_univalent(t):
    """f_t is univalent iff the quadratic z + z^2/(t - 2) is, i.e. |t - 2| >= 2."""
    return bool(abs(t - 2) >= 2)
