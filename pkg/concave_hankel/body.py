"""
The order-2 coefficient body of the self-maps of the disk fixing p.

Two parametrizations by the closed polydisk are provided: the w-chain,
built from Schwarz's lemma and the first- and second-order Dieudonne
disks at p, and the sigma-chain obtained from it by the change of
variables sigma0 = [w0, p^2]. Both take scalars or numpy arrays.
"""
from dataclasses import dataclass

import numpy as np

from .conf import settings
from .moebius import blaschke_psi, mobius_T
from .series import taylor_from_samples
from .utils import Decision, check_closed_disk


@dataclass(frozen=True)
class ParamTriple:
    x0: complex
    x1: complex
    x2: complex

    def __iter__(self):
        return iter((self.x0, self.x1, self.x2))

    def check(self, name='parameter'):
        for index, value in enumerate(self):
            check_closed_disk(value, '%s %d' % (name, index))
        return self

    def __getitem__(self, index):
        """Select samples when the components are arrays."""
        return ParamTriple(*(np.asarray(x)[index] for x in self))

    @classmethod
    def from_polar(cls, moduli, arguments):
        moduli = np.clip(moduli, 0, 1)
        return cls(*(r * np.exp(1j * a) for r, a in zip(moduli, arguments)))

    def to_polar(self, wrap=1e-6):
        """Moduli and arguments in [0, 2 pi); arguments within `wrap` of 2 pi read as 0."""
        values = [complex(x) for x in self]
        arguments = [float(np.angle(x) % (2 * np.pi)) for x in values]
        return [abs(x) for x in values], [0.0 if a > 2 * np.pi - wrap else a for a in arguments]


@dataclass(frozen=True)
class CoeffTriple:
    c0: complex
    c1: complex
    c2: complex

    def __iter__(self):
        return iter((self.c0, self.c1, self.c2))


@dataclass(frozen=True)
class Membership:
    decision: Decision
    params: ParamTriple = None


def c_from_w(pp, w):
    w0, w1, w2 = w
    p = pp.p
    q = 1 - p * p
    d = 1 - p * p * w0
    s0 = 1 - np.abs(w0) ** 2
    s1 = 1 - np.abs(w1) ** 2
    c0 = (p - p * w0) / d
    c1 = (q * q * w0 + p * q * s0 * w1) / d ** 2
    c2 = q / d ** 3 * (
        p * q * (1 - w0) * w0
        - q * (1 + p * p * w0) * s0 * w1
        + p * (np.conj(w0) - p * p) * s0 * w1 ** 2
        + p * d * s0 * s1 * w2
    )
    return CoeffTriple(c0, c1, c2)


def c_from_sigma(pp, sigma):
    s0, s1, s2 = sigma
    P = pp.P
    quadratic = 1 + (P * P - 2) * s0 + s0 ** 2
    m0 = 1 - np.abs(s0) ** 2
    m1 = 1 - np.abs(s1) ** 2
    c0 = (1 - s0) / P
    c1 = quadratic / P ** 2 + m0 * s1 / P
    # The conj(s0) s1^2 term carries no unimodular factor: with s1 defined by
    # sigma_from_w() it matches the w-chain exactly.
    c2 = (
        (1 - s0) * quadratic / P ** 3
        - (P * P - 2 + 2 * s0) * m0 * s1 / P ** 2
        + m0 * np.conj(s0) * s1 ** 2 / P
        + m0 * m1 * s2 / P
    )
    return CoeffTriple(c0, c1, c2)


def sigma_from_w(pp, w):
    w0, w1, w2 = w
    p2 = pp.p ** 2
    d = 1 - p2 * w0
    rotation = np.conj(d) / d
    return ParamTriple((w0 - p2) / d, rotation * w1, rotation * w2)


def w_from_sigma(pp, sigma):
    s0, s1, s2 = sigma
    p2 = pp.p ** 2
    w0 = (s0 + p2) / (1 + p2 * s0)
    d = 1 - p2 * w0
    rotation = d / np.conj(d)
    return ParamTriple(w0, rotation * s1, rotation * s2)


def tau_from_w(pp, w):
    """(psi(p), psi'(p), psi''(p)/2) for psi = T_p o phi o T_p."""
    w0, w1, w2 = w
    p = pp.p
    q = 1 - p * p
    s0 = 1 - np.abs(w0) ** 2
    s1 = 1 - np.abs(w1) ** 2
    return CoeffTriple(
        p * w0,
        w0 + p * s0 * w1 / q,
        s0 / q ** 2 * ((1 - p * np.conj(w0) * w1) * w1 - p * s1 * w2),
    )


def c_from_tau(pp, tau):
    t0, t1, t2 = tau
    p = pp.p
    q = 1 - p * p
    e = 1 - p * t0
    return CoeffTriple(
        (p - t0) / e,
        q * q * t1 / e ** 2,
        (-q ** 3 * e * t2 + p * q * q * t1 * (e - t1 + p * p * t1)) / e ** 3,
    )


def tau_from_c(pp, c):
    c0, c1, c2 = c
    p = pp.p
    e = 1 - p * c0
    return CoeffTriple(
        (p - c0) / e,
        c1 / e ** 2,
        (-e * c2 + p * c1 * (e - c1)) / ((1 - p * p) * e ** 3),
    )


def w_from_tau(pp, tau, tol=None, consistency=None):
    """
    Run the w-chain backwards. Returns a Membership whose params are the
    recovered (w0, w1, w2); parameters after a unimodular one are reported
    as 0 since the chain cannot see them.
    """
    tol = settings.MEMBERSHIP_TOLERANCE if tol is None else tol
    consistency = settings.CONSISTENCY_TOLERANCE if consistency is None else consistency
    t0, t1, t2 = (complex(t) for t in tau)
    p = pp.p
    q = 1 - p * p

    w0 = t0 / p
    if abs(w0) > 1 + tol:
        return Membership(Decision.OUTSIDE)
    if abs(w0) >= 1 - tol:
        # psi is the rotation w0 * z.
        if abs(t1 - w0) <= consistency and abs(t2) <= consistency:
            return Membership(Decision.BOUNDARY, ParamTriple(w0, 0j, 0j))
        return Membership(Decision.OUTSIDE)

    s0 = 1 - abs(w0) ** 2
    w1 = q * (t1 - w0) / (p * s0)
    if abs(w1) > 1 + tol:
        return Membership(Decision.OUTSIDE)
    numerator = q * q * t2 - s0 * (1 - p * w0.conjugate() * w1) * w1
    if abs(w1) >= 1 - tol:
        # psi is a Blaschke product of degree 2.
        if abs(numerator) <= consistency:
            return Membership(Decision.BOUNDARY, ParamTriple(w0, w1, 0j))
        return Membership(Decision.OUTSIDE)

    w2 = -numerator / (p * s0 * (1 - abs(w1) ** 2))
    params = ParamTriple(w0, w1, w2)
    if abs(w2) > 1 + tol:
        return Membership(Decision.OUTSIDE)
    if abs(w2) >= 1 - tol:
        return Membership(Decision.BOUNDARY, params)
    return Membership(Decision.INSIDE, params)


def membership_x2(pp, c, tol=None):
    """Decide whether c lies in the order-2 coefficient body."""
    if not abs(c.c0) < 1:
        return Membership(Decision.OUTSIDE)
    return w_from_tau(pp, tau_from_c(pp, c), tol=tol)


def phi_evaluator(pp, w):
    """phi = T_p o psi o T_p, the self-map fixing p with parameters w."""
    psi = blaschke_psi(pp, w)
    p = pp.p

    def evaluate(z):
        return mobius_T(p, psi(mobius_T(p, z)))
    return evaluate


def phi_series_from_w(pp, w, n_terms=None, radius=None, n_samples=None):
    n_terms = settings.SERIES_ORDER + 1 if n_terms is None else n_terms
    radius = settings.ORACLE_RADIUS_FACTOR * pp.p if radius is None else radius
    return taylor_from_samples(phi_evaluator(pp, w), radius, n_terms, n_samples=n_samples)


def sample_polydisk(rng, n, boundary_rate=None, max_modulus=1.0):
    """
    n area-uniform samples of the closed polydisk; each entry is pushed to
    the unit circle independently with probability boundary_rate.
    """
    boundary_rate = settings.BOUNDARY_RATE if boundary_rate is None else boundary_rate
    moduli = max_modulus * np.sqrt(rng.random((3, n)))
    arguments = 2 * np.pi * rng.random((3, n))
    if boundary_rate:
        moduli = np.where(rng.random((3, n)) < boundary_rate, 1.0, moduli)
    return ParamTriple(*(moduli * np.exp(1j * arguments)))
