import unittest

import numpy as np
from hypothesis import given, settings as hypothesis_settings, strategies as st

from concave_hankel.body import (
    CoeffTriple, ParamTriple, c_from_sigma, c_from_tau, c_from_w,
    membership_x2, phi_evaluator, phi_series_from_w, sample_polydisk,
    sigma_from_w, tau_from_c, tau_from_w, w_from_sigma, w_from_tau,
)
from concave_hankel.exceptions import InvalidInput
from concave_hankel.moebius import PoleParam, rho_coeffs
from concave_hankel.utils import Decision

poles = st.sampled_from([0.2, 0.5, 0.8])


def disk_points(max_modulus=1.0):
    return st.builds(
        lambda r, a: r * np.exp(1j * a),
        st.floats(0, max_modulus),
        st.floats(0, 2 * np.pi),
    )


def polydisk_points(max_modulus=1.0):
    return st.builds(ParamTriple, disk_points(max_modulus), disk_points(max_modulus), disk_points(max_modulus))


def assert_triple_close(testcase, actual, expected, atol):
    for index, (x, y) in enumerate(zip(actual, expected)):
        testcase.assertLessEqual(abs(x - y), atol, 'component %d: %r != %r' % (index, x, y))


class ParamTripleTests(unittest.TestCase):
    def test_check(self):
        ParamTriple(1, -1j, 0.5).check()
        with self.assertRaises(InvalidInput):
            ParamTriple(0, 1.1, 0).check()

    def test_polar_round_trip(self):
        moduli, arguments = ParamTriple(0.5j, -1, 0.25).to_polar()
        self.assertEqual(moduli, [0.5, 1, 0.25])
        assert_triple_close(self, ParamTriple.from_polar(moduli, arguments), (0.5j, -1, 0.25), 1e-15)

    def test_arguments_below_two_pi_wrap(self):
        _, arguments = ParamTriple(np.exp(-7e-9j), np.exp(-1e-3j), 0).to_polar()
        self.assertEqual(arguments[0], 0)
        self.assertAlmostEqual(arguments[1], 2 * np.pi - 1e-3, places=12)
        self.assertEqual(arguments[2], 0)
        self.assertTrue(all(0 <= a < 2 * np.pi for a in arguments))

    def test_from_polar_clamps(self):
        self.assertEqual(ParamTriple.from_polar([1.5, -0.1, 0.5], [0, 0, 0]).x0, 1)


class CFromWTests(unittest.TestCase):
    def test_constant_map(self):
        assert_triple_close(self, c_from_w(PoleParam(0.5), (0, 0, 0)), (0.5, 0, 0), 1e-15)

    def test_identity_prefix(self):
        assert_triple_close(self, c_from_w(PoleParam(0.5), (1, 0.4j, -0.3)), (0, 1, 0), 1e-15)

    def test_rotation_conjugates(self):
        pp = PoleParam(0.35)
        for zeta in np.exp(1j * np.linspace(0, 2 * np.pi, 7)):
            with self.subTest(zeta=zeta):
                assert_triple_close(self, c_from_w(pp, (zeta, 0, 0)), rho_coeffs(pp, zeta, 3), 1e-14)


class CFromSigmaTests(unittest.TestCase):
    def test_constant_map(self):
        assert_triple_close(self, c_from_sigma(PoleParam(0.5), (-0.25, 0, 0)), (0.5, 0, 0), 1e-15)

    def test_identity_prefix(self):
        assert_triple_close(self, c_from_sigma(PoleParam(0.5), (1, 0.3, 0.2j)), (0, 1, 0), 1e-15)

    @given(poles, polydisk_points())
    @hypothesis_settings(max_examples=500, deadline=None)
    def test_chain_equivalence(self, p, w):
        pp = PoleParam(p)
        assert_triple_close(self, c_from_sigma(pp, sigma_from_w(pp, w)), c_from_w(pp, w), 1e-11)

    def test_chain_equivalence_vectorized(self):
        rng = np.random.default_rng(7)
        for p in (0.2, 0.5, 0.8):
            pp = PoleParam(p)
            w = sample_polydisk(rng, 10 ** 4)
            for x, y in zip(c_from_sigma(pp, sigma_from_w(pp, w)), c_from_w(pp, w)):
                self.assertLessEqual(np.abs(x - y).max(), 1e-11)


class SigmaFromWTests(unittest.TestCase):
    def test_p_squared_maps_to_zero(self):
        self.assertEqual(sigma_from_w(PoleParam(0.5), (0.25, 0, 0)).x0, 0)

    def test_origin(self):
        assert_triple_close(self, sigma_from_w(PoleParam(0.5), (0, 0, 0)), (-0.25, 0, 0), 1e-15)

    @given(poles, polydisk_points())
    @hypothesis_settings(max_examples=500, deadline=None)
    def test_round_trip(self, p, w):
        pp = PoleParam(p)
        sigma = sigma_from_w(pp, w)
        for value in sigma:
            self.assertLessEqual(abs(value), 1 + 1e-12)
        assert_triple_close(self, w_from_sigma(pp, sigma), w, 1e-13)


class TauTests(unittest.TestCase):
    def test_zero(self):
        assert_triple_close(self, tau_from_w(PoleParam(0.5), (0, 0, 0)), (0, 0, 0), 0)

    def test_w0_only(self):
        assert_triple_close(self, tau_from_w(PoleParam(0.5), (0.3j, 0, 0)), (0.15j, 0.3j, 0), 1e-15)

    def test_value(self):
        self.assertAlmostEqual(tau_from_w(PoleParam(0.5), (0.3, 0.5, 0)).c1, 0.603333333333333, places=12)

    def test_last_parameter_only(self):
        # psi(z) = -z [z, p]^2, so psi''(p)/2 = -p/(1 - p^2)^2.
        pp = PoleParam(0.5)
        w = (0, 0, 1)
        assert_triple_close(self, tau_from_w(pp, w), (0, 0, -8 / 9), 1e-15)
        assert_triple_close(self, c_from_w(pp, w), (0.5, 0, 0.375), 1e-15)
        assert_triple_close(self, phi_series_from_w(pp, w)[:3], (0.5, 0, 0.375), 1e-9)
        membership = membership_x2(pp, c_from_w(pp, w))
        self.assertIs(membership.decision, Decision.BOUNDARY)
        assert_triple_close(self, membership.params, w, 1e-12)

    @given(poles, polydisk_points())
    @hypothesis_settings(max_examples=300, deadline=None)
    def test_c_and_tau_agree(self, p, w):
        pp = PoleParam(p)
        assert_triple_close(self, c_from_tau(pp, tau_from_w(pp, w)), c_from_w(pp, w), 1e-12)
        assert_triple_close(self, tau_from_c(pp, c_from_w(pp, w)), tau_from_w(pp, w), 1e-11)

    def test_inverse_chain_on_degree_two_blaschke(self):
        pp = PoleParam(0.5)
        membership = w_from_tau(pp, tau_from_w(pp, (0.3, 1j, 0.8)))
        self.assertIs(membership.decision, Decision.BOUNDARY)
        assert_triple_close(self, membership.params, (0.3, 1j, 0), 1e-9)


class MembershipTests(unittest.TestCase):
    def test_constant_map(self):
        pp = PoleParam(0.5)
        membership = membership_x2(pp, CoeffTriple(0.5, 0, 0))
        self.assertIs(membership.decision, Decision.INSIDE)
        assert_triple_close(self, membership.params, (0, 0, 0), 1e-15)

    def test_rotation_conjugate_is_boundary(self):
        pp = PoleParam(0.5)
        zeta = np.exp(0.7j)
        membership = membership_x2(pp, CoeffTriple(*rho_coeffs(pp, zeta, 3)))
        self.assertIs(membership.decision, Decision.BOUNDARY)
        assert_triple_close(self, membership.params, (zeta, 0, 0), 1e-9)

    def test_schwarz_pick_violation(self):
        self.assertIs(membership_x2(PoleParam(0.5), CoeffTriple(0, 2, 0)).decision, Decision.OUTSIDE)

    def test_large_c0(self):
        membership = membership_x2(PoleParam(0.5), CoeffTriple(1.2, 0, 0))
        self.assertIs(membership.decision, Decision.OUTSIDE)
        self.assertFalse(membership.decision)

    def test_last_parameter_too_large(self):
        pp = PoleParam(0.5)
        inside = c_from_w(pp, (0.2, -0.4j, 0.9))
        membership = membership_x2(pp, CoeffTriple(inside.c0, inside.c1, inside.c2 + 1))
        self.assertIs(membership.decision, Decision.OUTSIDE)

    @given(poles, polydisk_points(0.99))
    @hypothesis_settings(max_examples=500, deadline=None)
    def test_round_trip(self, p, w):
        pp = PoleParam(p)
        membership = membership_x2(pp, c_from_w(pp, w))
        self.assertIs(membership.decision, Decision.INSIDE)
        assert_triple_close(self, membership.params, w, 1e-9)

    def test_round_trip_thousand_samples(self):
        rng = np.random.default_rng(3)
        pp = PoleParam(0.5)
        w = sample_polydisk(rng, 1000, boundary_rate=0, max_modulus=0.99)
        for index in range(1000):
            params = w[index]
            membership = membership_x2(pp, c_from_w(pp, params))
            self.assertIs(membership.decision, Decision.INSIDE)
            assert_triple_close(self, membership.params, params, 1e-9)


class PhiSeriesTests(unittest.TestCase):
    def test_identity(self):
        phi = phi_series_from_w(PoleParam(0.5), (1, 0, 0))
        np.testing.assert_allclose(phi.coeffs, np.eye(9)[1], atol=1e-10)

    def test_constant(self):
        phi = phi_series_from_w(PoleParam(0.5), (0, 0, 0))
        np.testing.assert_allclose(phi.coeffs, 0.5 * np.eye(9)[0], atol=1e-10)

    @given(poles, polydisk_points())
    @hypothesis_settings(max_examples=100, deadline=None)
    def test_matches_c_from_w(self, p, w):
        pp = PoleParam(p)
        assert_triple_close(self, phi_series_from_w(pp, w)[:3], c_from_w(pp, w), 1e-8)

    @given(poles, polydisk_points())
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_fixed_point(self, p, w):
        self.assertLessEqual(abs(phi_evaluator(PoleParam(p), w)(p) - p), 1e-12)

    def test_self_map(self):
        rng = np.random.default_rng(11)
        pp = PoleParam(0.5)
        for _ in range(20):
            w = sample_polydisk(rng, 1)[0]
            z = sample_polydisk(rng, 1000).x0
            self.assertTrue(np.all(np.abs(phi_evaluator(pp, w)(z)) <= 1 + 1e-12))


class SamplePolydiskTests(unittest.TestCase):
    def test_moduli(self):
        w = sample_polydisk(np.random.default_rng(0), 2000, boundary_rate=0.1)
        moduli = np.abs(np.array(list(w)))
        self.assertTrue(np.all(moduli <= 1 + 1e-15))
        self.assertGreater(np.count_nonzero(np.isclose(moduli, 1)), 300)

    def test_deterministic(self):
        a = sample_polydisk(np.random.default_rng(5), 10)
        b = sample_polydisk(np.random.default_rng(5), 10)
        for x, y in zip(a, b):
            np.testing.assert_array_equal(x, y)
