# -*- coding: utf-8 -*-


"""Uniform grids on (0, L], quadrature and weighted operator norms

Every sampled function and kernel of the package lives on a
:class:`Grid1D`: the points x_i = i*h, i = 1..N, h = L/N. The Dirichlet
boundary at 0 is implicit, it is never a grid point.
"""


import collections
import logging
import math

import numpy as np

import hlk
from hlk import const


log = logging.getLogger('hlk-grid')


class Grid1D(collections.namedtuple('Grid1D', ['L', 'N'])):
    __slots__ = ()

    @property
    def h(self):
        return self.L / self.N

    @property
    def points(self):
        return np.arange(1, self.N + 1) / float(self.N) * self.L

    def cell_edges(self):
        """Edges of the sampling cells [x_i - h/2, x_i + h/2] within (0, L]"""
        edges = self.points - 0.5 * self.h
        return np.append(edges, self.L)


class QuadratureRule(collections.namedtuple('QuadratureRule',
                                            ['kind', 'weights', 'degree'])):
    __slots__ = ()


class WeightSpec(collections.namedtuple('WeightSpec', ['kind', 'xi'])):
    """Weight w on the half-line

    *unweighted* is 1, *exponential* is e^{xi x}, *boundary* is x and
    *exponential_boundary* is x e^{xi x}.
    """
    __slots__ = ()

    def log_value(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == const.WEIGHT_UNWEIGHTED:
            return np.zeros_like(x)
        if self.kind == const.WEIGHT_EXPONENTIAL:
            return self.xi * x
        if self.kind == const.WEIGHT_BOUNDARY:
            return np.log(x)
        return self.xi * x + np.log(x)

    def evaluate(self, x):
        return np.exp(self.log_value(x))


class KernelMatrix(collections.namedtuple('KernelMatrix',
                                          ['t', 'grid', 'values', 'method',
                                           'error'])):
    """Sampled kernel K(x_i, y_j): rows are x, columns are y."""
    __slots__ = ()


def make_grid(L, N):
    """Return the uniform grid of *N* points on (0, *L*]

    .. versionadded:: 0.1

    >>> from hlk import grid
    >>> grid.make_grid(1., 4).points
    array([0.25, 0.5 , 0.75, 1.  ])
    """
    try:
        L = float(L)
    except (TypeError, ValueError):
        raise hlk.InvalidArgument('Grid length must be a number, '
                                  'got {!r}'.format(L))
    if not math.isfinite(L) or L <= 0:
        raise hlk.InvalidArgument('Grid length must be positive, '
                                  'got {}'.format(L))
    if int(N) != N or N < 2:
        raise hlk.InvalidArgument('Grid needs at least 2 points, '
                                  'got {}'.format(N))
    return Grid1D(L, int(N))


def auto_length(t_max, x_max=const.DEFAULT_X_MAX):
    """Domain length x_max + 10 sqrt(t_max)"""
    return x_max + const.TAIL_WIDTHS * math.sqrt(t_max)


def unweighted():
    return WeightSpec(const.WEIGHT_UNWEIGHTED, 0.)


def exponential(xi):
    return WeightSpec(const.WEIGHT_EXPONENTIAL, float(xi))


def boundary():
    return WeightSpec(const.WEIGHT_BOUNDARY, 0.)


def exponential_boundary(xi):
    return WeightSpec(const.WEIGHT_EXPONENTIAL_BOUNDARY, float(xi))


def _trapezoid_weights(N, h):
    if N == 2:
        return np.array([h, h]), 0
    weights = np.full(N, h)
    # (0, h] closed by linear extrapolation through x_1, x_2
    weights[0] = 2. * h
    weights[1] = 0.5 * h
    weights[-1] = 0.5 * h
    return weights, 1


def _simpson_weights(N, h):
    weights = np.zeros(N)
    weights[:4] = h * np.array([2., 2. / 3., 2. / 3., 2. / 3.])
    if N > 4:
        composite = np.full(N - 3, 2.)
        composite[1::2] = 4.
        composite[0] = composite[-1] = 1.
        weights[3:] += composite * h / 3.
    return weights, 2


def rule_for(grid, kind=const.RULE_SIMPSON):
    """Return the quadrature rule on (0, L] sampled at the grid points

    .. versionadded:: 0.1

    :param grid: Grid1D
    :param kind: 'simpson' (default) or 'trapezoid'

    Simpson needs an even N >= 4, otherwise trapezoid is used.
    """
    if kind not in (const.RULE_SIMPSON, const.RULE_TRAPEZOID):
        raise hlk.InvalidArgument('Unknown quadrature rule {!r}'.format(kind))
    if kind == const.RULE_SIMPSON and (grid.N < 4 or grid.N % 2 == 1):
        log.debug('Simpson needs even N >= 4, falling back to trapezoid '
                  '(N={})'.format(grid.N))
        kind = const.RULE_TRAPEZOID
    if kind == const.RULE_SIMPSON:
        weights, degree = _simpson_weights(grid.N, grid.h)
    else:
        weights, degree = _trapezoid_weights(grid.N, grid.h)
    return QuadratureRule(kind, weights, degree)


def integrate(samples, rule):
    """Approximate the integral over (0, L] of sampled values

    .. versionadded:: 0.1

    :param samples: Function values on the grid points (length N), or a 2D
                    array whose first axis runs over the grid
    :param rule: QuadratureRule of the same grid
    """
    samples = np.asarray(samples, dtype=float)
    if samples.shape[0] != len(rule.weights):
        raise hlk.InvalidArgument(
            'Expected {} samples, got {}'.format(len(rule.weights),
                                                 samples.shape[0]))
    return np.tensordot(rule.weights, samples, axes=(0, 0))


def _check_kernel(kernel):
    values = np.asarray(kernel.values)
    if values.shape != (kernel.grid.N, kernel.grid.N):
        raise hlk.InvalidArgument(
            'Kernel shape {} does not match grid N={}'.format(
                values.shape, kernel.grid.N))
    return values


def conjugate(kernel, weight):
    """Return w(x) K(x, y) / w(y) as a matrix"""
    values = _check_kernel(kernel)
    if weight is None or weight.kind == const.WEIGHT_UNWEIGHTED:
        return values
    log_w = weight.log_value(kernel.grid.points)
    return values * np.exp(log_w[:, np.newaxis] - log_w[np.newaxis, :])


def column_integrals(kernel, weight=None, rule=None):
    """Return (1/w(y_j)) * integral of |K(x, y_j)| w(x) dx per column"""
    values = np.abs(conjugate(kernel, weight))
    if rule is None:
        return kernel.grid.h * values.sum(axis=0)
    if len(rule.weights) != kernel.grid.N:
        raise hlk.InvalidArgument('Quadrature rule does not match the grid')
    return rule.weights.dot(values)


def op_norm_1to1(kernel, weight=None, rule=None):
    """Weighted L1 -> L1 operator norm of the discretized integral operator

    .. versionadded:: 0.1

    :param kernel: KernelMatrix
    :param weight: WeightSpec, unweighted if None
    :param rule: QuadratureRule for the x integral, uniform h weights if None

    The norm is the sup over columns y_j of
    (1/w(y_j)) * integral of |K(x, y_j)| w(x) dx.
    """
    integrals = column_integrals(kernel, weight, rule)
    return float(integrals.max()) if integrals.size else 0.


def op_norm_inftoinf(kernel, weight=None, rule=None):
    """Weighted L_inf -> L_inf norm: sup over rows of the y integral"""
    values = np.abs(conjugate(kernel, weight))
    if rule is None:
        integrals = kernel.grid.h * values.sum(axis=1)
    else:
        if len(rule.weights) != kernel.grid.N:
            raise hlk.InvalidArgument('Quadrature rule does not match the '
                                      'grid')
        integrals = values.dot(rule.weights)
    return float(integrals.max())


def largest_singular_value(matrix, tol=const.POWER_TOL,
                           max_iter=const.POWER_MAX_ITER):
    """Power iteration on M^T M, returns the largest singular value of M"""
    matrix = np.asarray(matrix, dtype=float)
    if not np.all(np.isfinite(matrix)):
        raise hlk.InvalidArgument('Matrix has non finite entries')
    if not matrix.size or not np.any(matrix):
        return 0.
    vector = np.ones(matrix.shape[1]) + np.linspace(0., 1e-3,
                                                    matrix.shape[1])
    vector /= np.linalg.norm(vector)
    sigma = 0.
    residual = float('inf')
    for iteration in range(1, max_iter + 1):
        image = matrix.T.dot(matrix.dot(vector))
        norm = np.linalg.norm(image)
        if norm == 0.:
            return 0.
        new_sigma = math.sqrt(norm)
        residual = abs(new_sigma - sigma) / new_sigma
        vector = image / norm
        sigma = new_sigma
        if residual <= tol:
            log.debug('Power iteration converged in {} steps'.format(
                iteration))
            return sigma
    raise hlk.NumericFailure(
        'Power iteration did not converge in {} steps'.format(max_iter),
        data={'iterate': vector, 'residual': residual, 'sigma': sigma})


def op_norm_2to2(kernel, weight=None, tol=const.POWER_TOL,
                 max_iter=const.POWER_MAX_ITER):
    """Weighted L2 -> L2 norm of the discretized integral operator

    .. versionadded:: 0.1

    Largest singular value of h * w(x) K(x, y) / w(y), computed by power
    iteration. Raises :class:`hlk.NumericFailure` past *max_iter*.
    """
    values = conjugate(kernel, weight)
    return largest_singular_value(kernel.grid.h * values, tol=tol,
                                  max_iter=max_iter)


def op_norm_1toinf(kernel):
    """L1 -> L_inf norm, i.e. the max of |K|"""
    values = _check_kernel(kernel)
    return float(np.abs(values).max())
