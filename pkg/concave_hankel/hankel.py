"""
Closed-form functionals of concave functions with a pole at p.

The Hankel determinant H(f) = a2 a4 - a3^2 is reached three ways: from
the c-coefficients of the associated self-map (a_from_c then hankel2,
or hankel_from_c), and from the sigma-parameters through phi_p, for
which H = phi_p / 18P^3. The remaining functions are the one-parameter
extremal family F_zeta and the polynomials bounding M(p).

Every polynomial is stored as a coefficient table so that it can be
checked against its defining identity.
"""
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial

from .exceptions import InvalidInput
from .moebius import DiskRegion, mobius_T

# Tables of polynomials in (P, s): row k lists the coefficients of s^k in
# ascending powers of P.

# -18P [1 + (P^2 - 2) s + s^2]
PHI_BASE = ((0, -18), (0, 36, 0, -18), (0, -18))
# 3 [1 - 7P^2 + 2P^4 + (3P^2 - 2) s + s^2], multiplies (1 - |s|^2) sigma1
PHI_SIGMA1 = ((3, 0, -21, 0, 6), (-6, 0, 9), (3,))
# -2P, multiplies (1 - |s|^2)^2 sigma1^2
PHI_SIGMA1_SQUARED = ((0, -2),)
# -3P (P^2 - 1 + s), multiplies conj(s) (1 - |s|^2) sigma1^2
PHI_SIGMA1_SQUARED_CONJ = ((0, 3, 0, -3), (0, -3))
# -3P (P^2 - 1 + s), multiplies (1 - |s|^2)(1 - |sigma1|^2) sigma2
PHI_SIGMA2 = ((0, 3, 0, -3), (0, -3))

# 18P^3 h_p(t): row k lists the coefficients of t^k in ascending powers of P.
H_P_NUMERATOR = (
    (3, 20, -21, 0, 6),
    (-6, -39, 9, 21, 0),
    (0, 17, 21, 0, -6),
    (6, 3, -9, -3, 0),
    (-3, -1, 0, 0, 0),
)

# g(x), ascending powers of x.
G_COEFFS = (0, -7 / 48, 143 / 72, -121 / 128, -427 / 1152, 343 / 384, 5831 / 4608, -2401 / 1536)


@dataclass(frozen=True)
class ACoeffs:
    a2: complex
    a3: complex
    a4: complex

    def __iter__(self):
        return iter((self.a2, self.a3, self.a4))


def _table(rows, P, s):
    """Evaluate sum_k row_k(P) s^k."""
    return sum(polynomial.polyval(P, row) * s ** k for k, row in enumerate(rows))


def a_from_c(pp, c):
    c0, c1, c2 = c
    P = pp.P
    return ACoeffs(
        P - c0,
        P ** 2 + (-c1 + c0 ** 2 - 4 * P * c0 - 2) / 3,
        P ** 3 + (-c2 + c0 * c1 + 6 * c0 - 9 * P - 9 * P ** 2 * c0 + 3 * P * c0 ** 2 - 3 * P * c1) / 6,
    )


def hankel2(a):
    a2, a3, a4 = a
    return a2 * a4 - a3 ** 2


def hankel_from_c(pp, c):
    """H(f) straight from the c-coefficients, without forming a2, a3, a4."""
    c0, c1, c2 = c
    P = pp.P
    eighteen_h = (
        3 * (c0 - P) * c2
        - 2 * c1 ** 2
        + (c0 ** 2 - 4 * P * c0 + 3 * P ** 2 - 8) * c1
        - (c0 ** 2 - P * c0 + 1) * (2 * c0 ** 2 - 5 * P * c0 + 3 * P ** 2 + 8)
    )
    return eighteen_h / 18


def phi_p_affine(pp, s0, s1):
    """
    phi_p is affine in sigma2: return (base, slope) with
    phi_p(s0, s1, s2) = base + slope * s2.
    """
    P = pp.P
    m0 = 1 - np.abs(s0) ** 2
    m1 = 1 - np.abs(s1) ** 2
    base = (
        _table(PHI_BASE, P, s0)
        + _table(PHI_SIGMA1, P, s0) * m0 * s1
        + (_table(PHI_SIGMA1_SQUARED, P, s0) * m0 + _table(PHI_SIGMA1_SQUARED_CONJ, P, s0) * np.conj(s0))
        * m0 * s1 ** 2
    )
    slope = _table(PHI_SIGMA2, P, s0) * m0 * m1
    return base, slope


def phi_p(pp, sigma):
    s0, s1, s2 = sigma
    base, slope = phi_p_affine(pp, s0, s1)
    return base + slope * s2


def H_from_sigma(pp, sigma):
    return phi_p(pp, sigma) / (18 * pp.P ** 3)


def A_n(pp, zeta, n):
    if n < 1:
        raise InvalidInput('A_n needs n >= 1 (got %r).' % n)
    p = pp.p
    return (1 - p ** (2 * n) * zeta) / (p ** (n - 1) * (1 - p * p * zeta))


def koebe(z):
    return z / (1 - z) ** 2


def H_F(pp, zeta):
    p2 = pp.p ** 2
    return -(1 - p2) ** 2 / p2 * koebe(p2 * zeta)


def F_zeta(pp, zeta):
    """Evaluator of the extremal function F_zeta(z), analytic in |z| < p."""
    p = pp.p
    a = mobius_T(p, p * zeta)

    def evaluate(z):
        return (z - a * z * z) / ((1 - z / p) * (1 - p * z))
    return evaluate


def aw_disk(pp, n):
    """The closed disk of values of a_n over concave functions with pole p."""
    if n < 2:
        raise InvalidInput('aw_disk() needs n >= 2 (got %r).' % n)
    p = pp.p
    scale = p ** (n - 1) * (1 - p ** 4)
    return DiskRegion(
        center=(1 - p ** (2 * n + 2)) / scale,
        radius=(p * p - p ** (2 * n)) / scale,
    )


def omega_map(pp, z):
    P2 = pp.P ** 2
    return -(1 + (P2 - 2) * z + z * z) / P2


def h_p_coefficients(pp):
    """Ascending t-coefficients of h_p."""
    P = pp.P
    return np.array([polynomial.polyval(P, row) for row in H_P_NUMERATOR]) / (18 * P ** 3)


def h_p(pp, t):
    return polynomial.polyval(t, h_p_coefficients(pp))


def h_p_prime(pp, t):
    return polynomial.polyval(t, polynomial.polyder(h_p_coefficients(pp)))


def g(x):
    return polynomial.polyval(x, G_COEFFS)


def lower_bound_M(pp):
    """M(p) >= h_p(7/4P), the value of |H| at sigma = (7/4P, -1, 0)."""
    return float(h_p(pp, 7 / (4 * pp.P)))


def lower_bound_closed_form(pp):
    return 1 / (3 * pp.p) + pp.p / 3 + g(1 / pp.P)


def B_coeffs(pp, y):
    """
    Bounds for the four terms of |phi_p| in y = |sigma0|; with x = |sigma1|,
    |phi_p| <= B0 + B1 x + B2 x^2 + B3 (1 - x^2).
    """
    P = pp.P
    m = 1 - y * y
    return (
        18 * P * (1 + (P * P - 2) * y + y * y),
        3 * (1 - 7 * P ** 2 + 2 * P ** 4 + (3 * P * P - 2) * y + y * y) * m,
        P * (2 * m + 3 * y * (P * P - 1 + y)) * m,
        3 * P * (P * P - 1 + y) * m,
    )


def bound_polynomial(pp, t):
    """B0 + B1 + B3 written in t = 1 - |sigma0|."""
    P = pp.P
    return polynomial.polyval(t, (
        18 * P ** 3,
        12 * P ** 2 * (P * P - P - 2),
        -3 * P * (2 * P ** 3 + P * P + 2 * P - 4),
        3 * (3 * P * P + P + 2),
        -3,
    ))


def G_p(pp, t):
    P = pp.P
    return polynomial.polyval(t, (
        6 * (P ** 4 + 2 * P ** 3 - 2 * P * P),
        0,
        3 * (-3 * P ** 3 - 6 * P * P + 4 * P + 1),
        3 * P * (3 * P + 1),
    ))


def G_p_critical_point(pp):
    """The nonzero critical point of G_p, a minimum lying beyond t = 1."""
    P = pp.P
    return 2 * (3 * P ** 3 + 6 * P * P - 4 * P - 1) / (3 * P * (3 * P + 1))


def upper_bound_M(pp):
    P = pp.P
    return (P * P + 2 * P - 2) / (3 * P)


def upper_bound_in_p(pp):
    p = pp.p
    return (1 + 2 * p) / (3 * p) - p * (1 - p * p) / (3 * (1 + p * p))
