# -*- coding: utf-8 -*-


"""Test the finite-state semigroup oracle"""


import unittest

import numpy as np

import hlk
from hlk import oracle


INF = float('inf')


class ExponentTest(unittest.TestCase):
    def test_interpolate_exponent(self):
        assert oracle.interpolate_exponent(1., INF, 0.5) == 2.
        assert oracle.interpolate_exponent(INF, INF, 0.3) == INF
        self.assertAlmostEqual(oracle.interpolate_exponent(2., 2., 0.7), 2.)

    def test_conjugate_exponent(self):
        assert oracle.conjugate_exponent(1.) == INF
        assert oracle.conjugate_exponent(INF) == 1.
        assert oracle.conjugate_exponent(2.) == 2.
        self.assertAlmostEqual(oracle.conjugate_exponent(4. / 3.), 4.)

    def test_is_exact(self):
        assert oracle.is_exact(1., 4.)
        assert oracle.is_exact(4., 2.)
        assert oracle.is_exact(2., 2.)
        assert not oracle.is_exact(2., 4.)

    def test_case_exponents(self):
        case = oracle.InterpolationCase(1., 1., INF, INF, 0.5, 1.)
        assert case.p_theta == 2. and case.q_theta == 2.
        assert case.at(0.) == (1., 1.)

    def test_random_case_has_exact_ends(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            case = oracle.random_case(rng)
            assert oracle.is_exact(case.p0, case.q0)
            assert oracle.is_exact(case.p1, case.q1)
            assert 0.05 <= case.theta <= 0.95
            assert 0.1 <= case.t <= 5.


class SemigroupTest(unittest.TestCase):
    def setUp(self):
        self.S = oracle.new_semigroup([1., 2.], [[0., 1.], [1., 0.]],
                                      [0., 0.], [0., 0.])

    def test_generator(self):
        np.testing.assert_allclose(self.S.A, [[-1., 1.], [0.5, -0.5]])
        assert oracle.is_self_adjoint(self.S)

    def test_conservative_rows(self):
        T = oracle.semigroup_at(self.S, 1., 2.)
        np.testing.assert_allclose(T.sum(axis=1), [1., 1.], rtol=1e-12)

    def test_identity_at_zero(self):
        np.testing.assert_allclose(oracle.semigroup_at(self.S, 1., 0.),
                                   np.eye(2), atol=1e-15)
        self.assertRaises(hlk.InvalidArgument, oracle.semigroup_at, self.S,
                          1., -1.)

    def test_invalid_semigroups(self):
        for mu, S, kappa in [([0., 1.], np.zeros((2, 2)), [0., 0.]),
                             ([1., 1.], [[0., 1.], [2., 0.]], [0., 0.]),
                             ([1., 1.], [[0., -1.], [-1., 0.]], [0., 0.]),
                             ([1., 1.], np.zeros((2, 2)), [-1., 0.])]:
            self.assertRaises(hlk.InvalidArgument, oracle.new_semigroup, mu,
                              S, kappa, [0., 0.])

    def test_random_semigroup(self):
        rng = np.random.default_rng(0)
        S = oracle.random_semigroup(rng)
        assert 2 <= S.n <= 6
        assert oracle.is_self_adjoint(S)
        assert np.all(S.kappa >= 0.05) and np.all(S.kappa <= 0.5)
        self.assertRaises(hlk.InvalidArgument, oracle.random_semigroup, rng,
                          7)

    def test_trial_states(self):
        assert [oracle.trial_states(i) for i in range(6)] == [2, 3, 4, 5, 6,
                                                              2]

    def test_potentials_compose(self):
        S = self.S._replace(V=np.array([0.5, 1.]))
        composed = oracle.absorbed(S, [1., 0.])
        summed = oracle.with_potential(S, [1.5, 1.])
        np.testing.assert_allclose(oracle.semigroup_at(composed, 1., 1.),
                                   oracle.semigroup_at(summed, 1., 1.),
                                   rtol=1e-12)


class WeightedNormTest(unittest.TestCase):
    def setUp(self):
        self.B = np.array([[1., 2.], [3., 4.]])

    def test_closed_forms(self):
        ones = np.ones(2)
        assert oracle.weighted_norm(self.B, 1, 1, ones) == 6.
        assert oracle.weighted_norm(self.B, INF, INF, ones) == 7.
        assert oracle.weighted_norm(self.B, INF, INF, [1., 2.]) == 7.
        assert oracle.weighted_norm(self.B, 1, INF, ones) == 4.
        self.assertAlmostEqual(
            oracle.weighted_norm(np.diag([2., 3.]), 2, 2, ones), 3.)

    def test_power_iteration(self):
        value = oracle.weighted_norm(np.eye(2), 4., 2., np.ones(2))
        self.assertAlmostEqual(value, 2. ** 0.25, places=8)

    def test_invalid_inputs(self):
        self.assertRaises(hlk.InvalidArgument, oracle.weighted_norm, self.B,
                          0.5, 2., np.ones(2))
        self.assertRaises(hlk.InvalidArgument, oracle.weighted_norm,
                          [[1., -1.], [0., 1.]], 2., 2., np.ones(2))


class OracleChecksTest(unittest.TestCase):
    def test_interpolation(self):
        checks = oracle.check_interpolation(1, 6)
        assert [check['name'] for check in checks] == [
            'oracle_interpolation', 'oracle_log_convexity']
        assert checks[0]['n_points'] == 6
        assert all(check['pass'] for check in checks)

    def test_interpolation_fixed_case(self):
        case = oracle.InterpolationCase(1., 1., INF, INF, 0.5, 1.)
        checks = oracle.check_interpolation(2, 4, case=case, prefix='fixed')
        assert checks[0]['name'] == 'fixed_interpolation'
        assert checks[0]['params']['case'] == [1., 1., None, None, 0.5, 1.]
        assert checks[1]['n_points'] == 4
        assert all(check['pass'] for check in checks)

    def test_fixed_case_without_exact_pairs(self):
        case = oracle.InterpolationCase(1., INF, 2., 2., 0.5, 1.)
        checks = oracle.check_interpolation(7, 3, case=case,
                                            prefix='oracle_fixed')
        assert [check['name'] for check in checks] == [
            'oracle_fixed_interpolation']
        assert checks[0]['n_points'] == 3

    def test_log_convexity_needs_exact_pairs(self):
        S = oracle.random_semigroup(np.random.default_rng(1), 3)
        case = oracle.InterpolationCase(1., 2., 2., 4., 0.5, 1.)
        assert oracle.log_convexity_ratio(S, case) is None

    def test_jobs_do_not_change_results(self):
        single = oracle.check_interpolation(5, 4, jobs=1)
        pooled = oracle.check_interpolation(5, 4, jobs=2)
        assert single[0]['max_ratio'] == pooled[0]['max_ratio']
        assert single[0]['witness'] == pooled[0]['witness']

    def test_pert_ultracon(self):
        check = oracle.check_pert_ultracon_constant(0, 3)
        assert check['name'] == 'oracle_pert_ultracon'
        assert check['n_points'] == 3
        assert check['pass']
        self.assertRaises(hlk.InvalidArgument, oracle.pert_ultracon_ratio,
                          oracle.random_semigroup(np.random.default_rng(0)),
                          1., 1.)

    def test_adversarial_search(self):
        ratio, witness = oracle.adversarial_pert_ultracon(0, 2, steps=2)
        assert 0. < ratio <= 1.
        assert set(witness) == {'restart', 'nu'}

    def test_additivity(self):
        checks = oracle.check_additivity(0, 4)
        assert [check['name'] for check in checks] == [
            'oracle_additivity', 'oracle_domination']
        assert all(check['pass'] for check in checks)

    def test_miyadera_alpha(self):
        S = oracle.new_semigroup([1., 1.], np.zeros((2, 2)), [0.1, 0.1],
                                 [100., 100.])
        self.assertAlmostEqual(oracle.miyadera_alpha(S, 1.), 100. / 1.1)
        assert oracle.miyadera_ratio(S, 1.) is None
        self.assertRaises(hlk.InvalidArgument, oracle.miyadera_alpha, S, 0.)

    def test_miyadera_ratio_free(self):
        S = oracle.new_semigroup([1., 1.], [[0., 1.], [1., 0.]], [0.1, 0.1],
                                 [0., 0.])
        ratio, t, alpha = oracle.miyadera_ratio(S, 1.)
        assert alpha == 0.
        assert ratio <= 1.

    def test_miyadera_discrete(self):
        check = oracle.check_miyadera_discrete(0, 5)
        assert check['name'] == 'oracle_miyadera'
        assert check['n_points'] + check['params']['skipped'] == 5
        assert check['pass']
