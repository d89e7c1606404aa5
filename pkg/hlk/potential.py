# -*- coding: utf-8 -*-


"""Potentials on the half-line and their smallness constants

A potential is a vectorized function of x > 0 with metadata: the family and
parameters it was built from, the points where it jumps or is singular,
the exact value of the integral of x|V(x)| when known and the end of its
support.
"""


import collections
import logging
import numbers

import numpy as np
from scipy import linalg

import hlk
from hlk import closed_form
from hlk import const


log = logging.getLogger('hlk-potential')


Potential = collections.namedtuple('Potential', [
    'family',
    'params',
    'func',
    'breakpoints',
    'alpha_closed_form',
    'sup_abs',
    'support_end',
])

GAUSS_NODES, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(
    const.GAUSS_LEGENDRE_ORDER)
# e^{-x} is below 1e-8 beyond this point
EXP_DECAY_SUPPORT = 20.


def zero():
    return Potential('zero', {}, lambda x: np.zeros_like(np.asarray(
        x, dtype=float)), (), 0., 0., 0.)


def well(s, a, b):
    """V = -s on [a, b], zero elsewhere"""
    if not s > 0 or not 0 <= a < b:
        raise hlk.InvalidArgument(
            'well needs s > 0 and 0 <= a < b, got s={} a={} b={}'.format(
                s, a, b))

    def func(x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= a) & (x <= b), -float(s), 0.)
    return Potential('well', {'s': s, 'a': a, 'b': b}, func, (a, b),
                     s * (b ** 2 - a ** 2) / 2., float(s), float(b))


def exp_decay(s):
    """V = -s e^{-x}"""
    if not s > 0:
        raise hlk.InvalidArgument('exp_decay needs s > 0, got {}'.format(s))

    def func(x):
        return -s * np.exp(-np.asarray(x, dtype=float))
    return Potential('exp_decay', {'s': s}, func, (), float(s), float(s),
                     EXP_DECAY_SUPPORT)


def signed(s, a, b):
    """V = s on [0, a] and -s on (a, b]"""
    if not s > 0 or not 0 < a < b:
        raise hlk.InvalidArgument(
            'signed needs s > 0 and 0 < a < b, got s={} a={} b={}'.format(
                s, a, b))

    def func(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= a, float(s), np.where(x <= b, -float(s), 0.))
    return Potential('signed', {'s': s, 'a': a, 'b': b}, func, (a, b),
                     s * b ** 2 / 2., float(s), float(b))


def power(s, beta, b):
    """Singular attractive potential V = -s x^{-beta} on (0, b], beta < 2"""
    if not s > 0 or not 0 < beta < 2 or not b > 0:
        raise hlk.InvalidArgument(
            'power needs s > 0, 0 < beta < 2 and b > 0, got s={} beta={} '
            'b={}'.format(s, beta, b))

    def func(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide='ignore'):
            return np.where(x <= b, -s * x ** -beta, 0.)
    return Potential('power', {'s': s, 'beta': beta, 'b': b}, func, (b,),
                     s * b ** (2. - beta) / (2. - beta), float('inf'),
                     float(b))


def table(points):
    """Linear interpolation of (x, V(x)) pairs, zero beyond the last x"""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2 or len(points) < 2:
        raise hlk.InvalidArgument('table needs at least two (x, V) pairs')
    xs, values = points[:, 0], points[:, 1]
    if np.any(np.diff(xs) <= 0) or xs[0] < 0:
        raise hlk.InvalidArgument('table abscissae must be increasing and '
                                  'nonnegative')
    if not np.all(np.isfinite(values)):
        raise hlk.InvalidArgument('table values must be finite')

    def func(x):
        return np.interp(np.asarray(x, dtype=float), xs, values,
                         left=values[0], right=0.)
    return Potential('table', {'points': points.tolist()}, func, tuple(xs),
                     None, float(np.abs(values).max()), float(xs[-1]))


def scaled(V, factor):
    """factor * V"""
    if factor == 1:
        return V
    params = dict(V.params, scale=factor * V.params.get('scale', 1))
    alpha = (None if V.alpha_closed_form is None
             else abs(factor) * V.alpha_closed_form)
    return Potential(V.family, params, lambda x: factor * V.func(x),
                     V.breakpoints, alpha, abs(factor) * V.sup_abs,
                     V.support_end)


def negated(V):
    return scaled(V, -1)


def negative_part(V):
    """min(V, 0)"""
    params = dict(V.params, part='negative')
    return Potential(V.family, params,
                     lambda x: np.minimum(V.func(x), 0.), V.breakpoints,
                     None, V.sup_abs, V.support_end)


def truncate(V, n):
    """Clamp V to [-n, n]

    .. versionadded:: 0.1

    A level at or above sup|V| returns V itself.
    """
    if not n >= 0:
        raise hlk.InvalidArgument('Truncation level must be nonnegative, '
                                  'got {}'.format(n))
    if n >= V.sup_abs:
        return V
    if n == 0:
        return zero()
    params = dict(V.params, truncation=n)
    return Potential(V.family, params,
                     lambda x: np.clip(V.func(x), -n, n),
                     V.breakpoints, None, float(n), V.support_end)


BUILTINS = {
    'zero': (zero, 0),
    'well': (well, 3),
    'exp_decay': (exp_decay, 1),
    'signed': (signed, 3),
    'power': (power, 3),
}
BUILTIN_ARGS = {
    'zero': [],
    'well': ['s', 'a', 'b'],
    'exp_decay': ['s'],
    'signed': ['s', 'a', 'b'],
    'power': ['s', 'beta', 'b'],
}


def from_spec(spec):
    """Build a Potential from a string or dict spec

    .. versionadded:: 0.1

    Strings look like ``well:0.4:1:2``, with an optional leading ``-`` to
    negate and a trailing ``*k`` to scale. Dicts name the family and its
    parameters, e.g. ``{"family": "well", "s": 0.4, "a": 1, "b": 2}`` or
    ``{"family": "table", "points": [[0.5, -1], [2, 0]]}``.

    >>> from hlk import potential
    >>> potential.from_spec('well:1:1:2').alpha_closed_form
    1.5
    """
    if isinstance(spec, Potential):
        return spec
    if isinstance(spec, str):
        return _from_string(spec)
    if isinstance(spec, dict):
        return _from_dict(spec)
    raise hlk.ConfigError('Potential spec must be a string or an object, '
                          'got {!r}'.format(spec))


def _from_string(spec):
    text = spec.strip()
    factor = 1.
    if '*' in text:
        text, _, scale = text.rpartition('*')
        factor = _number(scale, spec)
    if text.startswith('-'):
        factor = -factor
        text = text[1:]
    family, _, rest = text.partition(':')
    if family not in BUILTINS:
        raise hlk.ConfigError('Unknown potential family {!r} in {!r}'.format(
            family, spec))
    args = [_number(value, spec) for value in rest.split(':')] if rest else []
    builder, arity = BUILTINS[family]
    if len(args) != arity:
        raise hlk.ConfigError('{} expects {} parameters, got {} in '
                              '{!r}'.format(family, arity, len(args), spec))
    try:
        return scaled(builder(*args), factor)
    except hlk.InvalidArgument as exc:
        raise hlk.ConfigError('{} ({!r})'.format(exc, spec))


def _from_dict(spec):
    family = spec.get('family')
    factor = _number(spec.get('scale', 1), spec)
    if spec.get('negate', False):
        factor = -factor
    try:
        if family == 'table':
            V = table(spec.get('points', []))
        elif family in BUILTINS:
            builder, _ = BUILTINS[family]
            missing = [name for name in BUILTIN_ARGS[family]
                       if name not in spec]
            if missing:
                raise hlk.ConfigError('{} is missing {}'.format(
                    family, ', '.join(missing)))
            V = builder(*[_number(spec[name], spec)
                          for name in BUILTIN_ARGS[family]])
        else:
            raise hlk.ConfigError('Unknown potential family {!r}'.format(
                family))
    except hlk.ConfigError:
        raise
    except hlk.InvalidArgument as exc:
        raise hlk.ConfigError(str(exc))
    return scaled(V, factor)


def _number(value, spec):
    if isinstance(value, bool):
        raise hlk.ConfigError('Expected a number in {!r}'.format(spec))
    if isinstance(value, numbers.Real):
        return float(value)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise hlk.ConfigError('Expected a number, got {!r} in {!r}'.format(
            value, spec))


def describe(V):
    """Plain dict of a potential for reports"""
    description = {'family': V.family}
    description.update(V.params)
    return description


def panel_nodes(edges, breakpoints=()):
    """Gauss-Legendre nodes and weights on panels split at *breakpoints*

    Returns (nodes, weights, panel_start) where panel_start is the left edge
    of the panel each node belongs to.
    """
    edges = np.asarray(edges, dtype=float)
    inside = [point for point in breakpoints
              if edges[0] < point < edges[-1]]
    edges = np.union1d(edges, inside)
    left, right = edges[:-1], edges[1:]
    half = 0.5 * (right - left)
    middle = 0.5 * (right + left)
    nodes = middle[:, np.newaxis] + half[:, np.newaxis] * GAUSS_NODES
    weights = half[:, np.newaxis] * GAUSS_WEIGHTS
    starts = np.repeat(left, len(GAUSS_NODES))
    return nodes.ravel(), weights.ravel(), starts


def sample(V, grid):
    """Cell averages of V over [x_i - h/2, x_i + h/2] within (0, L]

    .. versionadded:: 0.1
    """
    cell_edges = grid.cell_edges()
    nodes, weights, starts = panel_nodes(cell_edges, V.breakpoints)
    cells = np.searchsorted(cell_edges, starts, side='right') - 1
    integrals = np.bincount(cells, weights=weights * V.func(nodes),
                            minlength=grid.N)
    return integrals / np.diff(cell_edges)


def _support_nodes(V, grid):
    edges = np.linspace(0., grid.L, grid.N + 1)
    nodes, weights, _ = panel_nodes(edges, V.breakpoints)
    values = np.abs(V.func(nodes))
    keep = values > 0
    return nodes[keep], weights[keep] * values[keep]


def alpha_of(V, grid):
    """Quadrature value of the integral of x|V(x)| over (0, L]

    .. versionadded:: 0.1

    >>> from hlk import grid, potential
    >>> round(potential.alpha_of(potential.well(1., 1., 2.),
    ...                          grid.make_grid(10., 100)), 10)
    1.5
    """
    nodes, weights = _support_nodes(V, grid)
    return float(np.dot(nodes, weights))


def miyadera_norm(V, lam, xi, grid):
    """Weighted L1 resolvent smallness of V

    .. versionadded:: 0.1

    :param lam: Spectral parameter, lam > xi^2
    :param xi: Exponential weight parameter

    sup over grid y of the integral of |V(x)| e^{xi (x - y)} G_lam(x, y) dx.
    """
    params = closed_form.resolvent_params(lam, xi)
    nodes, weights = _support_nodes(V, grid)
    if not nodes.size:
        return 0.
    columns = weights.dot(closed_form.weighted_green(
        params, nodes[:, np.newaxis], grid.points[np.newaxis, :]))
    return float(columns.max())


def miyadera_norm_m_weighted(V, omega, grid):
    """sup over grid y of the integral of (x/y) G_omega(x, y) |V(x)| dx"""
    if not omega > 0:
        raise hlk.InvalidArgument('omega must be positive, got {}'.format(
            omega))
    nodes, weights = _support_nodes(V, grid)
    if not nodes.size:
        return 0.
    points = grid.points
    green = closed_form.green_function(omega, nodes[:, np.newaxis],
                                       points[np.newaxis, :])
    columns = (weights * nodes).dot(green) / points
    return float(columns.max())


def form_smallness_ratio(V, grid, tol=const.FORM_TOL,
                         max_iter=const.POWER_MAX_ITER):
    """Best constant in the discrete form bound sum |V| u^2 <= rho <L_h u, u>

    .. versionadded:: 0.1

    L_h is the Dirichlet second difference matrix on the grid (zero values
    at 0 and L + h). rho is the top eigenvalue of D L_h^{-1} D with
    D = diag(|V|^{1/2}), found by power iteration.
    """
    root = np.sqrt(np.abs(sample(V, grid)))
    if not np.any(root):
        return 0.
    h2 = grid.h ** 2
    banded = np.empty((2, grid.N))
    banded[0, :] = -1. / h2
    banded[1, :] = 2. / h2
    try:
        factor = linalg.cholesky_banded(banded)
    except linalg.LinAlgError as exc:
        raise hlk.NumericFailure('Cholesky factorization failed: {}'.format(
            exc))

    def apply(vector):
        return root * linalg.cho_solve_banded((factor, False), root * vector)

    vector = root / np.linalg.norm(root)
    rho = 0.
    residual = float('inf')
    for iteration in range(1, max_iter + 1):
        image = apply(vector)
        new_rho = float(np.dot(vector, image))
        norm = np.linalg.norm(image)
        residual = abs(new_rho - rho) / new_rho
        vector = image / norm
        rho = new_rho
        if residual <= tol:
            log.debug('Form smallness converged in {} steps: {}'.format(
                iteration, rho))
            return rho
    raise hlk.NumericFailure(
        'Form smallness iteration did not converge in {} steps'.format(
            max_iter),
        data={'iterate': vector, 'residual': residual, 'rho': rho})
