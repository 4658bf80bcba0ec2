"""
Pseudo-hyperbolic geometry of the unit disk: the involutions T_a, the
rotation conjugates rho_zeta fixing p, and Dieudonne's first- and
second-order variability disks.
"""
from dataclasses import dataclass

import numpy as np

from .conf import settings
from .exceptions import DegenerateDenominator, InvalidInput
from .series import TruncatedSeries
from .utils import check_closed_disk


@dataclass(frozen=True)
class PoleParam:
    p: float

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise InvalidInput('The pole p must lie in (0, 1) (got %r).' % self.p)
        object.__setattr__(self, 'p', float(self.p))

    @property
    def P(self):
        return self.p + 1 / self.p


@dataclass(frozen=True)
class DiskRegion:
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise InvalidInput('A disk radius must be nonnegative (got %r).' % self.radius)

    def distance(self, z):
        """Signed distance from the circle, negative inside."""
        return np.abs(z - self.center) - self.radius

    def contains(self, z, tol=None):
        tol = settings.ALGEBRA_TOLERANCE if tol is None else tol
        return np.abs(z - self.center) <= self.radius + tol

    def on_boundary(self, z, tol=None):
        tol = settings.ALGEBRA_TOLERANCE if tol is None else tol
        return np.abs(self.distance(z)) <= tol


def pseudo_hyperbolic(z, w, epsilon=None):
    """[z, w] = (z - w) / (1 - conj(w) z)."""
    epsilon = settings.EPSILON if epsilon is None else epsilon
    denominator = 1 - np.conj(w) * z
    if np.any(np.abs(denominator) <= epsilon):
        raise DegenerateDenominator('1 - conj(w) z vanishes for z=%r, w=%r.' % (z, w))
    return (z - w) / denominator


def mobius_T(a, z, epsilon=None):
    """The involution T_a(z) = (a - z) / (1 - conj(a) z) swapping 0 and a."""
    return -pseudo_hyperbolic(z, a, epsilon=epsilon)


def rho(pp, zeta):
    """Evaluator of rho_zeta = T_p(zeta T_p(z)), a self-map fixing p."""
    p = pp.p

    def evaluate(z):
        return mobius_T(p, zeta * mobius_T(p, z))
    return evaluate


def rho_coeffs(pp, zeta, n_terms):
    check_closed_disk(zeta, 'zeta')
    p = pp.p
    denominator = 1 - p * p * zeta
    ratio = (1 - zeta) * p / denominator
    coeffs = np.empty(n_terms, dtype=complex)
    coeffs[0] = ratio
    if n_terms > 1:
        powers = np.cumprod(np.concatenate([[1], np.full(n_terms - 2, ratio)]))
        coeffs[1:] = zeta * (1 - p * p) ** 2 / denominator ** 2 * powers
    return TruncatedSeries(coeffs)


def _check_base_point(z0):
    if not 0 < abs(z0) < 1:
        raise InvalidInput('The base point z0 must satisfy 0 < |z0| < 1 (got %r).' % z0)


def dieudonne_disk1(z0, tau0):
    """Variability disk of psi'(z0) over self-maps with psi(0)=0, psi(z0)=tau0."""
    _check_base_point(z0)
    r, s = abs(z0), abs(tau0)
    if s > r * (1 + 1e-12):
        raise InvalidInput('Schwarz lemma requires |tau0| <= |z0| (got %r, %r).' % (tau0, z0))
    return DiskRegion(center=tau0 / z0, radius=max(r * r - s * s, 0.0) / (r * (1 - r * r)))


def _second_order_terms(z0, tau0, tau1):
    _check_base_point(z0)
    r, s = abs(z0), abs(tau0)
    if s >= r:
        raise InvalidInput('The second-order disk needs |tau0| < |z0| (got %r, %r).' % (tau0, z0))
    gap = tau1 - tau0 / z0
    center = gap / (z0 * (1 - r * r)) - np.conj(tau0) * gap ** 2 / (r * r - s * s)
    spent = r * abs(gap) ** 2 / (r * r - s * s)
    return center, spent


def dieudonne2_lhs(z0, tau0, tau1, tau2):
    center, spent = _second_order_terms(z0, tau0, tau1)
    return abs(tau2 - center) + spent


def dieudonne2_rhs(z0, tau0):
    _check_base_point(z0)
    r = abs(z0)
    if abs(tau0) >= r:
        raise InvalidInput('The second-order disk needs |tau0| < |z0| (got %r, %r).' % (tau0, z0))
    return r * (1 - abs(tau0 / z0) ** 2) / (1 - r * r) ** 2


def dieudonne2_disk(z0, tau0, tau1):
    """Variability disk of psi''(z0)/2 once psi(z0) and psi'(z0) are fixed."""
    center, spent = _second_order_terms(z0, tau0, tau1)
    radius = dieudonne2_rhs(z0, tau0) - spent
    if radius < -settings.ALGEBRA_TOLERANCE:
        raise InvalidInput('tau1=%r lies outside the first-order disk.' % tau1)
    return DiskRegion(center=center, radius=max(radius, 0.0))


def blaschke_psi(pp, w):
    """
    Evaluator of psi(z) = z * omega([z, p]) with
    omega(u) = [u [-w2 u, -w1], -w0]; psi(0) = 0 and psi(p) = p * w0.
    """
    w0, w1, w2 = w
    for name, value in zip(('w0', 'w1', 'w2'), (w0, w1, w2)):
        check_closed_disk(value, name)
    p = pp.p

    def evaluate(z):
        u = pseudo_hyperbolic(z, p)
        inner = pseudo_hyperbolic(-w2 * u, -w1)
        return z * pseudo_hyperbolic(u * inner, -w0)
    return evaluate
