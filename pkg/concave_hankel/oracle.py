"""
Independent checks of the closed forms.

fprime_series() rebuilds f' from the series of its self-map phi and
a_from_phi() reads a2, a3, a4 off it, giving a route to H(f) that shares
nothing with the algebra in body.py and hankel.py. verify() runs every
check family over random samples and reports the worst residual of each.
"""
import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from . import body, hankel, moebius, series
from .conf import settings
from .utils import Decision

logger = logging.getLogger(__name__)


def _pole_factor(pp, order):
    """(1 - z/p)^2 (1 - pz)^2 as a series."""
    p = pp.p
    linear = series.multiply(
        series.TruncatedSeries([1, -1 / p], order=order),
        series.TruncatedSeries([1, -p], order=order),
    )
    return series.multiply(linear, linear)


def fprime_series(pp, phi):
    """
    f'(z) = p^2 / ((z - p)^2 (1 - pz)^2) * exp(int_0^z -2 phi(t) / (1 - t phi(t)) dt)
    expanded about 0, at the order of phi.
    """
    integrand = -2 * series.multiply(phi, series.reciprocal(1 - phi.shift(1)))
    exponential = series.exp(series.integrate(integrand))
    return series.multiply(series.reciprocal(_pole_factor(pp, phi.order)), exponential)


def fprime_evaluator(pp, phi, nodes=32):
    """f' evaluated pointwise from an evaluator of phi, integrating along rays."""
    p = pp.p
    x, weights = np.polynomial.legendre.leggauss(nodes)
    s, weights = (x + 1) / 2, weights / 2

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        t = z[..., None] * s
        values = phi(t)
        integral = z * np.sum(weights * (-2 * values / (1 - t * values)), axis=-1)
        return np.exp(integral) / ((1 - z / p) ** 2 * (1 - p * z) ** 2)
    return evaluate


def a_from_phi(pp, phi):
    f = series.integrate(fprime_series(pp, phi))
    return hankel.ACoeffs(f[2], f[3], f[4])


@dataclass(frozen=True)
class FamilyReport:
    name: str
    samples: int
    worst_residual: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.worst_residual <= self.tolerance)

    def as_dict(self):
        return {**asdict(self), 'pass': self.passed}


@dataclass(frozen=True)
class VerificationReport:
    p_values: list
    seed: int
    families: list = field(default_factory=list)

    @property
    def passed(self):
        return all(family.passed for family in self.families)

    def failures(self):
        return [family.name for family in self.families if not family.passed]

    def as_dict(self):
        return {
            'p_values': list(self.p_values),
            'seed': self.seed,
            'families': [family.as_dict() for family in self.families],
        }


def _worst(residuals):
    residuals = np.asarray(residuals, dtype=float).ravel()
    if residuals.size == 0:
        return 0.0
    if np.isnan(residuals).any():
        return float('inf')
    return float(residuals.max())


def _random_disk(rng, n, max_modulus=1.0):
    return max_modulus * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def _random_series(rng, n_terms):
    a = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
    a[0] = 10 ** rng.uniform(-1, 1) * np.exp(2j * np.pi * rng.random())
    return series.TruncatedSeries(a)


def _interior(rng, n, max_modulus):
    return body.sample_polydisk(rng, n, boundary_rate=0, max_modulus=max_modulus)


# Each check takes (pole, rng, n) and returns (samples, residuals).

def check_series_reciprocal(pp, rng, n):
    residuals = []
    for _ in range(n):
        a = _random_series(rng, settings.SERIES_ORDER + 1)
        r = series.reciprocal(a)
        product = series.multiply(a, r).coeffs.copy()
        scale = np.convolve(np.abs(a.coeffs), np.abs(r.coeffs))[:a.order + 1].max()
        product[0] -= 1
        residuals.append(np.abs(product).max() / scale)
    return n, residuals


def check_series_exp(pp, rng, n):
    residuals = []
    for _ in range(n):
        d = _random_series(rng, settings.SERIES_ORDER + 1)
        e = series.exp(series.integrate(d))
        left, right = series.derivative(e).coeffs, series.multiply(e, d).coeffs
        scale = np.convolve(np.abs(e.coeffs), np.abs(d.coeffs))[:right.size].max()
        residuals.append(np.abs(left[:right.size] - right).max() / scale)
    return n, residuals


def check_series_taylor(pp, rng, n):
    residuals = []
    n_terms = settings.SERIES_ORDER + 1
    for _ in range(n):
        coeffs = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
        recovered = series.taylor_from_samples(series.TruncatedSeries(coeffs), 1.0, n_terms)
        residuals.append(np.abs(recovered.coeffs - coeffs).max())
    return n, residuals


def check_moebius_involution(pp, rng, n):
    a, z = _random_disk(rng, n, 0.99), _random_disk(rng, n, 0.99)
    return n, np.abs(moebius.mobius_T(a, moebius.mobius_T(a, z)) - z)


def check_moebius_rho_coeffs(pp, rng, n):
    p = pp.p
    residuals = []
    zetas = body.sample_polydisk(rng, n).x0
    for zeta in zetas:
        def explicit(z, zeta=zeta):
            return ((zeta - p * p) * z + (1 - zeta) * p) / (-(1 - zeta) * p * z + 1 - p * p * zeta)
        closed = moebius.rho_coeffs(pp, zeta, 8)
        residuals.append(np.abs(series.taylor_from_samples(explicit, 0.5, 8).coeffs - closed.coeffs).max())
    return n, residuals


def _psi_taylor(pp, w):
    p = pp.p
    psi = moebius.blaschke_psi(pp, w)
    radius = min(p, 1 - p) / 2
    return series.taylor_from_samples(lambda z: psi(p + z), radius, 3).coeffs


def check_moebius_dieudonne(pp, rng, n):
    p = pp.p
    residuals = []
    samples = 0
    w = body.sample_polydisk(rng, n)
    for index in range(n):
        params = w[index]
        if abs(params.x0) >= 1 - 1e-9:
            # |tau0| = |z0|: psi is a rotation and both disks degenerate.
            continue
        tau0, tau1, tau2 = _psi_taylor(pp, params)
        disk = moebius.dieudonne_disk1(p, tau0)
        lhs = moebius.dieudonne2_lhs(p, tau0, tau1, tau2)
        rhs = moebius.dieudonne2_rhs(p, tau0)
        residuals.append(max(0.0, disk.distance(tau1), lhs - rhs))
        samples += 1
    return samples, residuals


def check_moebius_dieudonne_equality(pp, rng, n):
    p = pp.p
    residuals = []
    w = _interior(rng, n, 0.9)
    w2 = np.exp(2j * np.pi * rng.random(n))
    for index in range(n):
        params = body.ParamTriple(w.x0[index], w.x1[index], w2[index])
        tau0, tau1, tau2 = _psi_taylor(pp, params)
        residuals.append(abs(moebius.dieudonne2_lhs(p, tau0, tau1, tau2) - moebius.dieudonne2_rhs(p, tau0)))
    return n, residuals


def check_body_chain_equivalence(pp, rng, n):
    w = body.sample_polydisk(rng, n)
    by_w = body.c_from_w(pp, w)
    by_sigma = body.c_from_sigma(pp, body.sigma_from_w(pp, w))
    return n, [np.abs(x - y) for x, y in zip(by_w, by_sigma)]


def check_body_sigma_round_trip(pp, rng, n):
    w = body.sample_polydisk(rng, n)
    back = body.w_from_sigma(pp, body.sigma_from_w(pp, w))
    return n, [np.abs(x - y) for x, y in zip(back, w)]


def check_body_fixed_point(pp, rng, n):
    w = body.sample_polydisk(rng, n)
    return n, np.abs(body.phi_evaluator(pp, w)(pp.p) - pp.p)


def check_body_self_map(pp, rng, n):
    w = body.sample_polydisk(rng, n)
    z = body.sample_polydisk(rng, n).x0
    return n, np.maximum(np.abs(body.phi_evaluator(pp, w)(z)) - 1, 0)


def check_body_membership_round_trip(pp, rng, n):
    w = _interior(rng, n, 0.99)
    residuals = []
    for index in range(n):
        params = w[index]
        membership = body.membership_x2(pp, body.c_from_w(pp, params))
        if membership.decision is not Decision.INSIDE:
            residuals.append(np.inf)
            continue
        residuals.append(max(abs(x - y) for x, y in zip(membership.params, params)))
    return n, residuals


def check_body_phi_series(pp, rng, n):
    w = body.sample_polydisk(rng, n)
    residuals = []
    for index in range(n):
        params = w[index]
        phi = body.phi_series_from_w(pp, params)
        residuals.append(max(abs(phi[k] - c) for k, c in enumerate(body.c_from_w(pp, params))))
    return n, residuals


def check_hankel_phi_consistency(pp, rng, n):
    sigma = body.sample_polydisk(rng, n)
    by_c = hankel.hankel2(hankel.a_from_c(pp, body.c_from_sigma(pp, sigma)))
    by_phi = hankel.H_from_sigma(pp, sigma)
    return n, np.abs(by_c - by_phi) / np.maximum(1, np.abs(by_phi))


def check_hankel_eq_h_consistency(pp, rng, n):
    c = body.c_from_sigma(pp, body.sample_polydisk(rng, n))
    return n, np.abs(hankel.hankel_from_c(pp, c) - hankel.hankel2(hankel.a_from_c(pp, c)))


def check_hankel_koebe_family(pp, rng, n):
    zeta = body.sample_polydisk(rng, n).x0
    a3 = hankel.A_n(pp, zeta, 3)
    by_coeffs = hankel.A_n(pp, zeta, 2) * hankel.A_n(pp, zeta, 4) - a3 ** 2
    return n, np.abs(by_coeffs - hankel.H_F(pp, zeta)) / np.maximum(1, np.abs(a3) ** 2)


def check_hankel_aw_disk(pp, rng, n):
    zeta = body.sample_polydisk(rng, n).x0
    circle = np.exp(2j * np.pi * rng.random(n))
    residuals = []
    for order in (2, 3, 4):
        disk = hankel.aw_disk(pp, order)
        scale = max(1.0, disk.center)
        residuals.append(np.maximum(disk.distance(hankel.A_n(pp, zeta, order)), 0) / scale)
        residuals.append(np.abs(disk.distance(hankel.A_n(pp, circle, order))) / scale)
    return 6 * n, residuals


def check_hankel_omega_map(pp, rng, n):
    s0 = body.sample_polydisk(rng, n).x0
    zeros = np.zeros(n, dtype=complex)
    return n, np.abs(hankel.omega_map(pp, s0) - hankel.H_from_sigma(pp, (s0, zeros, zeros)))


def check_hankel_h_p_identity(pp, rng, n):
    t = rng.random(n)
    by_phi = -hankel.H_from_sigma(pp, (t, -np.ones(n), np.zeros(n)))
    return n, np.abs(hankel.h_p(pp, t) - by_phi)


def check_hankel_h_p_anchors(pp, rng, n):
    P = pp.P
    return 2, [abs(hankel.h_p(pp, 1) - 1), abs(hankel.h_p_prime(pp, 1) + 2 * (P - 2) * (P + 1) / (3 * P))]


def check_hankel_h_p_derivative(pp, rng, n):
    first, _ = series.central_difference(lambda t: hankel.h_p(pp, t), 1.0)
    return 1, [abs(first - hankel.h_p_prime(pp, 1.0))]


def check_hankel_lower_bound_identity(pp, rng, n):
    return 1, [abs(hankel.lower_bound_M(pp) - hankel.lower_bound_closed_form(pp))]


def check_hankel_lower_bound_positivity(pp, rng, n):
    x = np.linspace(0, 0.5, 1002)[1:-1]
    return x.size, np.maximum(-(x / 3 + hankel.g(x)), 0)


def check_hankel_bound_sandwich(pp, rng, n):
    p = pp.p
    lower, upper = hankel.lower_bound_M(pp), hankel.upper_bound_M(pp)
    slice_max = hankel.h_p(pp, np.linspace(0, 1, 1001)).max()
    residuals = [
        lower - upper,
        1 / (3 * p) - lower,
        upper - (1 / (3 * p) + 2 / 3),
        1 - slice_max,
    ]
    return len(residuals), np.maximum(residuals, 0)


def check_hankel_upper_bound_chain(pp, rng, n):
    y = np.linspace(0, 1, 1001)
    t = 1 - y
    scale = 18 * pp.P ** 3
    b0, b1, b2, b3 = hankel.B_coeffs(pp, y)
    g0 = hankel.G_p(pp, 0)
    residuals = [
        np.maximum(b2 - b3, 0) / scale,
        np.abs(b0 + b1 + b3 - hankel.bound_polynomial(pp, t)) / scale,
        np.maximum(hankel.bound_polynomial(pp, t) - hankel.G_p(pp, t), 0) / scale,
        np.maximum(hankel.G_p(pp, t) - g0, 0) / scale,
        [max(1 - hankel.G_p_critical_point(pp), 0)],
        [abs(g0 / scale - hankel.upper_bound_M(pp))],
        [abs(hankel.upper_bound_M(pp) - hankel.upper_bound_in_p(pp))],
    ]
    return 4 * y.size + 3, [np.asarray(r, dtype=float) for r in residuals]


def check_oracle_triple_path(pp, rng, n):
    w = body.sample_polydisk(rng, n)
    residuals = []
    for index in range(n):
        params = w[index]
        by_sigma = hankel.H_from_sigma(pp, body.sigma_from_w(pp, params))
        by_w = hankel.hankel2(hankel.a_from_c(pp, body.c_from_w(pp, params)))
        by_series = hankel.hankel2(a_from_phi(pp, body.phi_series_from_w(pp, params)))
        residuals.append(max(abs(by_sigma - by_w), abs(by_w - by_series), abs(by_sigma - by_series)))
    return n, residuals


def check_oracle_fprime_evaluator(pp, rng, n):
    w = body.sample_polydisk(rng, n)
    radius = settings.ORACLE_RADIUS_FACTOR * pp.p
    residuals = []
    for index in range(n):
        params = w[index]
        by_series = fprime_series(pp, body.phi_series_from_w(pp, params))[:4]
        by_samples = series.taylor_from_samples(
            fprime_evaluator(pp, body.phi_evaluator(pp, params)), radius, 4,
        ).coeffs
        residuals.append(np.max(np.abs(by_series - by_samples) / np.maximum(1, np.abs(by_series))))
    return n, residuals


# name -> (check, tolerance)
FAMILIES = {
    'series.reciprocal': (check_series_reciprocal, 1e-12),
    'series.exp': (check_series_exp, 1e-10),
    'series.taylor': (check_series_taylor, 1e-11),
    'moebius.involution': (check_moebius_involution, 1e-12),
    'moebius.rho_coeffs': (check_moebius_rho_coeffs, 1e-9),
    'moebius.dieudonne': (check_moebius_dieudonne, 1e-8),
    'moebius.dieudonne_equality': (check_moebius_dieudonne_equality, 1e-8),
    'body.chain_equivalence': (check_body_chain_equivalence, 1e-11),
    'body.sigma_round_trip': (check_body_sigma_round_trip, 1e-12),
    'body.fixed_point': (check_body_fixed_point, 1e-12),
    'body.self_map': (check_body_self_map, 1e-12),
    'body.membership_round_trip': (check_body_membership_round_trip, 1e-9),
    'body.phi_series': (check_body_phi_series, 1e-8),
    'hankel.phi_consistency': (check_hankel_phi_consistency, 1e-10),
    'hankel.eq_h_consistency': (check_hankel_eq_h_consistency, 1e-10),
    'hankel.koebe_family': (check_hankel_koebe_family, 1e-12),
    'hankel.aw_disk': (check_hankel_aw_disk, 1e-12),
    'hankel.omega_map': (check_hankel_omega_map, 1e-12),
    'hankel.h_p_identity': (check_hankel_h_p_identity, 1e-11),
    'hankel.h_p_anchors': (check_hankel_h_p_anchors, 1e-12),
    'hankel.h_p_derivative': (check_hankel_h_p_derivative, 1e-6),
    'hankel.lower_bound_identity': (check_hankel_lower_bound_identity, 1e-10),
    'hankel.lower_bound_positivity': (check_hankel_lower_bound_positivity, 0.0),
    'hankel.bound_sandwich': (check_hankel_bound_sandwich, 0.0),
    'hankel.upper_bound_chain': (check_hankel_upper_bound_chain, 1e-10),
    'oracle.triple_path': (check_oracle_triple_path, 1e-8),
    'oracle.fprime_evaluator': (check_oracle_fprime_evaluator, 1e-7),
}


def verify_all(pp, n_random=None, seed=None, names=None):
    """Run the check families for one pole; returns FamilyReports sorted by name."""
    n_random = settings.SAMPLES if n_random is None else n_random
    seed = settings.SEED if seed is None else seed
    reports = []
    for index, name in enumerate(sorted(FAMILIES)):
        if names is not None and name not in names:
            continue
        check, tolerance = FAMILIES[name]
        # Each family draws from its own stream so results don't depend on
        # which other families run.
        rng = np.random.default_rng([seed, index])
        samples, residuals = check(pp, rng, n_random)
        if isinstance(residuals, list) and residuals and np.ndim(residuals[0]):
            residuals = np.concatenate([np.ravel(r) for r in residuals])
        report = FamilyReport(name, int(samples), _worst(residuals), tolerance)
        log = logger.debug if report.passed else logger.warning
        log('p=%s %s: worst residual %.3e (tolerance %.0e).', pp.p, name, report.worst_residual, tolerance)
        reports.append(report)
    return reports


def verify(p_values=(0.2, 0.5, 0.8), n_random=None, seed=None, names=None):
    """verify_all() over several poles, merged per family."""
    seed = settings.SEED if seed is None else seed
    merged = {}
    for p in sorted(p_values):
        for report in verify_all(moebius.PoleParam(p), n_random=n_random, seed=seed, names=names):
            previous = merged.get(report.name)
            if previous is not None:
                report = FamilyReport(
                    report.name,
                    previous.samples + report.samples,
                    max(previous.worst_residual, report.worst_residual),
                    report.tolerance,
                )
            merged[report.name] = report
    result = VerificationReport(sorted(p_values), seed, [merged[name] for name in sorted(merged)])
    logger.info('Verified %d families over p=%s: %s.', len(result.families), result.p_values,
                'all passed' if result.passed else 'failures in ' + ', '.join(result.failures()))
    return result
