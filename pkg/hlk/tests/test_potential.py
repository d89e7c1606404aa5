# -*- coding: utf-8 -*-


"""Test potentials, specs and smallness constants"""


import math
import unittest

import numpy as np

import hlk
from hlk import grid
from hlk import potential


class BuilderTest(unittest.TestCase):
    def test_well(self):
        V = potential.well(0.4, 1., 2.)
        np.testing.assert_allclose(V.func(np.array([0.5, 1.5, 2.5])),
                                   [0., -0.4, 0.])
        self.assertAlmostEqual(V.alpha_closed_form, 0.6)
        assert V.support_end == 2.

    def test_signed(self):
        V = potential.signed(0.3, 0.5, 2.)
        np.testing.assert_allclose(V.func(np.array([0.25, 1., 3.])),
                                   [0.3, -0.3, 0.])
        self.assertAlmostEqual(V.alpha_closed_form, 0.6)

    def test_power_is_singular(self):
        V = potential.power(0.2, 0.5, 1.)
        assert V.sup_abs == float('inf')
        self.assertAlmostEqual(float(V.func(0.25)), -0.4)
        self.assertAlmostEqual(V.alpha_closed_form, 0.2 / 1.5)

    def test_invalid_parameters(self):
        self.assertRaises(hlk.InvalidArgument, potential.well, -1., 1., 2.)
        self.assertRaises(hlk.InvalidArgument, potential.well, 1., 2., 1.)
        self.assertRaises(hlk.InvalidArgument, potential.exp_decay, 0.)
        self.assertRaises(hlk.InvalidArgument, potential.power, 1., 2., 1.)
        self.assertRaises(hlk.InvalidArgument, potential.table, [[1., 0.]])
        self.assertRaises(hlk.InvalidArgument, potential.table,
                          [[2., 0.], [1., 0.]])

    def test_table(self):
        V = potential.table([[0., -1.], [2., 1.]])
        np.testing.assert_allclose(V.func(np.array([1., 3.])), [0., 0.])
        assert V.alpha_closed_form is None

    def test_scaled_and_negated(self):
        V = potential.negated(potential.well(0.4, 1., 2.))
        self.assertAlmostEqual(float(V.func(1.5)), 0.4)
        self.assertAlmostEqual(V.alpha_closed_form, 0.6)
        assert potential.scaled(V, 1) is V

    def test_negative_part(self):
        V = potential.negative_part(potential.signed(0.3, 0.5, 2.))
        np.testing.assert_allclose(V.func(np.array([0.25, 1.])), [0., -0.3])

    def test_truncate(self):
        V = potential.power(1., 0.5, 1.)
        truncated = potential.truncate(V, 2.)
        assert truncated.sup_abs == 2.
        self.assertAlmostEqual(float(truncated.func(0.01)), -2.)
        bounded = potential.well(0.4, 1., 2.)
        assert potential.truncate(bounded, 1.) is bounded
        assert potential.truncate(V, 0.).family == 'zero'
        self.assertRaises(hlk.InvalidArgument, potential.truncate, V, -1.)


class SpecTest(unittest.TestCase):
    def test_string_specs(self):
        assert potential.from_spec('zero').family == 'zero'
        V = potential.from_spec('well:1:1:2')
        assert V.alpha_closed_form == 1.5
        V = potential.from_spec('-well:0.4:1:2*2')
        self.assertAlmostEqual(float(V.func(1.5)), 0.8)
        V = potential.from_spec('exp_decay:0.5')
        self.assertAlmostEqual(float(V.func(0.)), -0.5)

    def test_dict_specs(self):
        V = potential.from_spec({'family': 'well', 's': 0.4, 'a': 1,
                                 'b': 2, 'negate': True})
        self.assertAlmostEqual(float(V.func(1.5)), 0.4)
        V = potential.from_spec({'family': 'table',
                                 'points': [[0.5, -1.], [2., 0.]]})
        assert V.family == 'table'

    def test_invalid_specs(self):
        for spec in ['unknown', 'well:1:1', 'well:a:1:2', 'well:1:2:1',
                     {'family': 'well', 's': 1}, {'family': 'nope'},
                     {'family': 'table', 'points': [[1., 1.]]}, 42,
                     {'family': 'exp_decay', 's': True}]:
            self.assertRaises(hlk.ConfigError, potential.from_spec, spec)

    def test_describe(self):
        description = potential.describe(potential.well(0.4, 1., 2.))
        assert description == {'family': 'well', 's': 0.4, 'a': 1.,
                               'b': 2.}


class SampleTest(unittest.TestCase):
    def test_cell_average(self):
        V = potential.well(1., 0., 2.)
        samples = potential.sample(V, grid.make_grid(4., 4))
        np.testing.assert_allclose(samples, [-1., -0.5, 0., 0.])

    def test_cell_average_well_edge(self):
        V = potential.well(1., 1., 2.)
        samples = potential.sample(V, grid.make_grid(4., 4))
        np.testing.assert_allclose(samples, [-0.5, -0.5, 0., 0.])

    def test_zero_samples(self):
        samples = potential.sample(potential.zero(), grid.make_grid(4., 8))
        assert not np.any(samples)


class SmallnessTest(unittest.TestCase):
    def setUp(self):
        self.grid = grid.make_grid(30., 1500)

    def test_alpha_of_polynomial_exact(self):
        V = potential.well(1., 1., 2.)
        self.assertAlmostEqual(potential.alpha_of(V, self.grid), 1.5,
                               places=10)
        V = potential.signed(0.3, 0.5, 2.)
        self.assertAlmostEqual(potential.alpha_of(V, self.grid), 0.6,
                               places=10)

    def test_alpha_of_exp_decay(self):
        V = potential.exp_decay(0.5)
        self.assertAlmostEqual(potential.alpha_of(V, self.grid), 0.5,
                               places=8)

    def test_alpha_of_zero(self):
        assert potential.alpha_of(potential.zero(), self.grid) == 0.

    def test_miyadera_norm_below_alpha(self):
        V = potential.well(0.4, 1., 2.)
        alpha = potential.alpha_of(V, self.grid)
        for xi in (-1., 0., 1.):
            for lam in (xi ** 2 + 0.1, 1., 10.):
                norm = potential.miyadera_norm(V, lam, xi, self.grid)
                assert 0 < norm <= alpha * (1 + 1e-12)

    def test_miyadera_norm_large_lambda(self):
        V = potential.well(0.4, 1., 2.)
        small = potential.miyadera_norm(V, 100., 0., self.grid)
        large = potential.miyadera_norm(V, 1., 0., self.grid)
        assert small < large

    def test_miyadera_norm_invalid(self):
        V = potential.well(0.4, 1., 2.)
        self.assertRaises(hlk.InvalidArgument, potential.miyadera_norm, V,
                          1., 1., self.grid)

    def test_m_weighted_below_alpha(self):
        V = potential.exp_decay(0.5)
        alpha = potential.alpha_of(V, self.grid)
        for omega in (0.1, 1., 10.):
            norm = potential.miyadera_norm_m_weighted(V, omega, self.grid)
            assert 0 < norm <= alpha * (1 + 1e-12)
        self.assertRaises(hlk.InvalidArgument,
                          potential.miyadera_norm_m_weighted, V, 0.,
                          self.grid)

    def test_form_smallness(self):
        current = grid.make_grid(20., 1000)
        for V in (potential.well(0.4, 1., 2.), potential.exp_decay(0.5)):
            rho = potential.form_smallness_ratio(V, current)
            alpha = potential.alpha_of(V, current)
            assert 0 < rho <= alpha * (1 + 1e-3)
        assert potential.form_smallness_ratio(potential.zero(),
                                              current) == 0.

    def test_form_smallness_scales(self):
        current = grid.make_grid(10., 200)
        V = potential.well(0.4, 1., 2.)
        rho = potential.form_smallness_ratio(V, current)
        doubled = potential.form_smallness_ratio(potential.scaled(V, 2.),
                                                 current)
        assert math.isclose(doubled, 2. * rho, rel_tol=1e-6)
