# -*- coding: utf-8 -*-


"""Test grids, quadrature and operator norms"""


import math
import unittest

import numpy as np

import hlk
from hlk import closed_form
from hlk import const
from hlk import grid


def constant_kernel(N, L=1., value=1.):
    current = grid.make_grid(L, N)
    return grid.KernelMatrix(1., current, np.full((N, N), value),
                             const.METHOD_CLOSED_FORM, 0.)


class GridTest(unittest.TestCase):
    def test_points(self):
        current = grid.make_grid(2., 4)
        np.testing.assert_allclose(current.points, [0.5, 1., 1.5, 2.])
        assert current.h == 0.5

    def test_cell_edges(self):
        edges = grid.make_grid(2., 4).cell_edges()
        np.testing.assert_allclose(edges, [0.25, 0.75, 1.25, 1.75, 2.])

    def test_invalid_grid(self):
        for L, N in [(0., 10), (-1., 10), ('abc', 10), (float('inf'), 10),
                     (1., 1), (1., 2.5)]:
            self.assertRaises(hlk.InvalidArgument, grid.make_grid, L, N)

    def test_auto_length(self):
        assert grid.auto_length(4.) == 25.
        assert grid.auto_length(1., x_max=2.) == 12.


class QuadratureTest(unittest.TestCase):
    def test_trapezoid_constant(self):
        current = grid.make_grid(1., 100)
        rule = grid.rule_for(current, const.RULE_TRAPEZOID)
        value = grid.integrate(np.ones(100), rule)
        self.assertAlmostEqual(value, 1., places=10)

    def test_trapezoid_linear(self):
        current = grid.make_grid(1., 100)
        rule = grid.rule_for(current, const.RULE_TRAPEZOID)
        self.assertAlmostEqual(grid.integrate(current.points, rule), 0.5,
                               places=10)

    def test_simpson_exact_to_degree(self):
        current = grid.make_grid(3., 30)
        rule = grid.rule_for(current)
        assert rule.kind == const.RULE_SIMPSON
        assert rule.degree == 2
        for power in range(rule.degree + 1):
            exact = 3. ** (power + 1) / (power + 1)
            value = grid.integrate(current.points ** power, rule)
            assert abs(value - exact) <= 1e-10 * exact

    def test_simpson_fallback(self):
        for N in (3, 5, 31):
            rule = grid.rule_for(grid.make_grid(1., N))
            assert rule.kind == const.RULE_TRAPEZOID
        rule = grid.rule_for(grid.make_grid(1., 2))
        assert rule.degree == 0

    def test_unknown_rule(self):
        self.assertRaises(hlk.InvalidArgument, grid.rule_for,
                          grid.make_grid(1., 10), 'gauss')

    def test_integrate_shape(self):
        rule = grid.rule_for(grid.make_grid(1., 10))
        self.assertRaises(hlk.InvalidArgument, grid.integrate, np.ones(9),
                          rule)
        columns = grid.integrate(np.ones((10, 3)), rule)
        np.testing.assert_allclose(columns, [1., 1., 1.])

    def test_positive_weights(self):
        for N in (4, 6, 50):
            rule = grid.rule_for(grid.make_grid(1., N))
            assert np.all(rule.weights > 0)


class WeightTest(unittest.TestCase):
    def test_evaluate(self):
        self.assertAlmostEqual(float(grid.unweighted().evaluate(3.)), 1.)
        self.assertAlmostEqual(float(grid.exponential(-1.).evaluate(2.)),
                               math.exp(-2.))
        self.assertAlmostEqual(float(grid.boundary().evaluate(2.)), 2.)
        self.assertAlmostEqual(
            float(grid.exponential_boundary(1.).evaluate(2.)),
            2. * math.exp(2.))

    def test_conjugate_keeps_diagonal(self):
        current = grid.make_grid(1., 5)
        kernel = grid.KernelMatrix(1., current, np.eye(5),
                                   const.METHOD_CLOSED_FORM, 0.)
        conjugated = grid.conjugate(kernel, grid.exponential(40.))
        np.testing.assert_allclose(conjugated, np.eye(5))

    def test_conjugate_large_weight(self):
        kernel = constant_kernel(20, L=100.)
        conjugated = grid.conjugate(kernel, grid.exponential(5.))
        assert np.all(np.isfinite(conjugated))


class OperatorNormTest(unittest.TestCase):
    def test_constant_kernel(self):
        kernel = constant_kernel(10)
        self.assertAlmostEqual(grid.op_norm_1to1(kernel), 1.)
        self.assertAlmostEqual(grid.op_norm_inftoinf(kernel), 1.)
        self.assertAlmostEqual(grid.op_norm_2to2(kernel), 1., places=6)
        assert grid.op_norm_1toinf(kernel) == 1.

    def test_rule_mismatch(self):
        kernel = constant_kernel(10)
        rule = grid.rule_for(grid.make_grid(1., 12))
        self.assertRaises(hlk.InvalidArgument, grid.op_norm_1to1, kernel,
                          None, rule)
        self.assertRaises(hlk.InvalidArgument, grid.op_norm_inftoinf, kernel,
                          None, rule)

    def test_shape_mismatch(self):
        kernel = grid.KernelMatrix(1., grid.make_grid(1., 4), np.ones((3, 3)),
                                   const.METHOD_CLOSED_FORM, 0.)
        self.assertRaises(hlk.InvalidArgument, grid.op_norm_1toinf, kernel)

    def test_boundary_weight_column(self):
        current = grid.make_grid(1., 4)
        kernel = grid.KernelMatrix(1., current, np.eye(4),
                                   const.METHOD_CLOSED_FORM, 0.)
        columns = grid.column_integrals(kernel, grid.boundary())
        np.testing.assert_allclose(columns, np.full(4, current.h))

    def test_boundary_weight_closed_form(self):
        for t in (0.1, 1.):
            current = grid.make_grid(10. + 20. * math.sqrt(t), 1000)
            kernel = closed_form.closed_form_kernel(t, current)
            norm = grid.op_norm_1to1(kernel, grid.boundary())
            assert abs(norm - 1.) <= 1e-6

    def test_closed_form_contraction(self):
        current = grid.make_grid(5., 200)
        for t in (0.1, 1.):
            kernel = closed_form.closed_form_kernel(t, current)
            assert grid.op_norm_2to2(kernel) <= 1. + 1e-6
            assert grid.op_norm_1to1(kernel) <= 1. + 1e-6

    def test_rank_one(self):
        current = grid.make_grid(2., 8)
        values = np.zeros((8, 8))
        values[2, 5] = -3.
        kernel = grid.KernelMatrix(1., current, values,
                                   const.METHOD_CLOSED_FORM, 0.)
        self.assertAlmostEqual(grid.op_norm_2to2(kernel), 3. * current.h,
                               places=12)
        points = current.points
        weighted = grid.op_norm_2to2(kernel, grid.exponential(1.))
        self.assertAlmostEqual(
            weighted, 3. * current.h * math.exp(points[2] - points[5]),
            places=12)

    def test_schur_ordering(self):
        current = grid.make_grid(3., 30)
        values = np.random.default_rng(3).random((30, 30))
        kernels = [
            grid.KernelMatrix(1., current, values, const.METHOD_CLOSED_FORM,
                              0.),
            closed_form.closed_form_kernel(0.5, current)]
        for kernel in kernels:
            bound = math.sqrt(grid.op_norm_1to1(kernel) *
                              grid.op_norm_inftoinf(kernel))
            assert grid.op_norm_2to2(kernel) <= bound

    def test_monotone_in_kernel(self):
        current = grid.make_grid(3., 30)
        rng = np.random.default_rng(5)
        smaller = rng.random((30, 30))
        larger = smaller + rng.random((30, 30))
        for weight in (None, grid.boundary(), grid.exponential(-1.)):
            norms = [grid.op_norm_1to1(grid.KernelMatrix(
                1., current, values, const.METHOD_CLOSED_FORM, 0.), weight)
                for values in (smaller, larger)]
            assert norms[0] <= norms[1]

    def test_largest_singular_value(self):
        self.assertAlmostEqual(
            grid.largest_singular_value(np.diag([3., 1.])), 3., places=6)
        assert grid.largest_singular_value(np.zeros((3, 3))) == 0.
        self.assertRaises(hlk.InvalidArgument, grid.largest_singular_value,
                          np.array([[1., float('nan')]]))

    def test_power_iteration_budget(self):
        matrix = np.diag([1., 0.999999])
        with self.assertRaises(hlk.NumericFailure) as context:
            grid.largest_singular_value(matrix, tol=1e-300, max_iter=3)
        assert 'sigma' in context.exception.data
