# -*- coding: utf-8 -*-


"""Perturbed kernels k_t^V by independent numerical methods

* duhamel: fixed point of K_t = k_t - int_0^t k_{t-s} V K_s ds built on the
  closed form Dirichlet kernel
* crank_nicolson: implicit evolution of u_t = u'' - V u from a grid delta
* lie_trotter: product of exact free steps and e^{-dt V} multiplications
* monte_carlo: Feynman-Kac functionals of Brownian motion killed at 0

Each method can be checked against the others, there is no closed form
for V != 0.
"""


import collections
import logging
import math

import numpy as np
from scipy import linalg

import hlk
from hlk import closed_form
from hlk import const
from hlk import grid as grid_quad
from hlk import potential


log = logging.getLogger('hlk-engine')


SolverConfig = collections.namedtuple('SolverConfig', [
    'series_depth',
    'series_tol',
    'dt',
    'time_quadrature_nodes',
])
SolverConfig.__new__.__defaults__ = (50, 1e-10, 1e-3, 64)

MCConfig = collections.namedtuple('MCConfig', [
    'paths',
    'dt',
    'seed',
    'antithetic',
    'block',
])
MCConfig.__new__.__defaults__ = (20000, 1e-3, 0, True, 4096)


def solver_config(series_depth=50, series_tol=1e-10, dt=1e-3,
                  time_quadrature_nodes=64):
    """Return a validated SolverConfig"""
    if int(series_depth) != series_depth or series_depth < 1:
        raise hlk.InvalidArgument('series_depth must be a positive integer')
    if not series_tol > 0:
        raise hlk.InvalidArgument('series_tol must be positive')
    if not dt > 0:
        raise hlk.InvalidArgument('dt must be positive')
    if (int(time_quadrature_nodes) != time_quadrature_nodes or
            time_quadrature_nodes < 2):
        raise hlk.InvalidArgument('time_quadrature_nodes must be an integer '
                                  '>= 2')
    return SolverConfig(int(series_depth), float(series_tol), float(dt),
                        int(time_quadrature_nodes))


def mc_config(paths=20000, dt=1e-3, seed=0, antithetic=True, block=4096):
    """Return a validated MCConfig"""
    if int(paths) != paths or paths < 1:
        raise hlk.InvalidArgument('paths must be a positive integer')
    if not dt > 0:
        raise hlk.InvalidArgument('dt must be positive')
    if int(block) != block or block < 2:
        raise hlk.InvalidArgument('block must be an integer >= 2')
    return MCConfig(int(paths), float(dt), int(seed), bool(antithetic),
                    int(block))


def _check_time(t):
    if not t > 0:
        raise hlk.InvalidArgument('t must be positive, got {}'.format(t))


def _column_blocks(N, size=const.COLUMN_BLOCK):
    return [np.arange(start, min(start + size, N))
            for start in range(0, N, size)]


def volterra_weights(m, tau):
    """Lower triangular (m+1)x(m+1) weights of int_0^{s_k} F(s) ds

    Row k integrates over the nodes 0..k: composite Simpson, closed by the
    3/8 rule on the last three intervals when k is odd, trapezoid for k = 1.
    """
    weights = np.zeros((m + 1, m + 1))
    for k in range(1, m + 1):
        row = weights[k]
        if k == 1:
            row[:2] = 0.5 * tau
            continue
        even = k if k % 2 == 0 else k - 3
        if even:
            simpson = np.full(even + 1, 2.)
            simpson[1::2] = 4.
            simpson[0] = simpson[-1] = 1.
            row[:even + 1] += simpson * tau / 3.
        if k % 2 == 1:
            row[k - 3:k + 1] += np.array([1., 3., 3., 1.]) * 3. * tau / 8.
    return weights


def time_levels(t, m):
    """Levels s_k = t phi(k/m) clustered at both ends of [0, t]

    phi(u) = u^2 / (u^2 + (1 - u)^2), so the steps shrink like t/m^2 next
    to s = 0 and s = t. Returns (s, ds/du).
    """
    u = np.linspace(0., 1., m + 1)
    denominator = u ** 2 + (1. - u) ** 2
    s = float(t) * u ** 2 / denominator
    s[-1] = float(t)
    return s, float(t) * 2. * u * (1. - u) / denominator ** 2


def duhamel_weights(t, m):
    """Volterra weights in s on the clustered levels

    Simpson in u = phi^{-1}(s/t) applied to F(s(u)) ds/du. The weights of
    s = 0 and s = t vanish, so neither the initial grid delta nor the
    final delta-like lag enters the last row.
    """
    s, jacobian = time_levels(t, m)
    return s, volterra_weights(m, 1. / m) * jacobian[np.newaxis, :]


def duhamel_kernel(V, t, grid, cfg=None, jobs=None):
    """Perturbed kernel as fixed point of the Duhamel formula

    .. versionadded:: 0.1

    :param V: Potential
    :param t: Time
    :param grid: Grid1D
    :param cfg: SolverConfig (series_depth sweeps, series_tol residual,
                time_quadrature_nodes clustered time levels)
    :param jobs: Worker count for column blocks

    The zeroth iterate is the closed form k_t, so V = 0 returns it exactly.
    Each sweep is Gauss-Seidel in time; the residual is the sup norm of the
    change between sweeps. A residual growing for three consecutive sweeps
    raises :class:`hlk.DivergenceError`.
    """
    _check_time(t)
    cfg = cfg or SolverConfig()
    free = closed_form.closed_form_kernel(t, grid)
    values = potential.sample(V, grid)
    support = np.flatnonzero(values)
    if not support.size:
        log.debug('Zero potential, returning the closed form kernel')
        return grid_quad.KernelMatrix(float(t), grid, free.values,
                                      const.METHOD_DUHAMEL, 0.)

    m = cfg.time_quadrature_nodes
    levels, weights = duhamel_weights(t, m)
    points = grid.points
    z = points[support]
    # final_lags[i] = k_{t - s_i}(x, z) for every x and z in the support
    final_lags = closed_form.dirichlet_kernel(
        (float(t) - levels[:m])[:, np.newaxis, np.newaxis],
        points[np.newaxis, :, np.newaxis], z[np.newaxis, np.newaxis, :])

    def level_lags(level):
        """k_{s_level - s_i}(z', z) for i < level"""
        return closed_form.dirichlet_kernel(
            (levels[level] - levels[:level])[:, np.newaxis, np.newaxis],
            z[np.newaxis, :, np.newaxis], z[np.newaxis, np.newaxis, :])

    if 8 * support.size ** 2 * m * (m + 1) // 2 <= const.LAG_CACHE_BYTES:
        lag_table = [None] + [level_lags(level) for level in
                              range(1, m + 1)]
        support_lags = lag_table.__getitem__
    else:
        log.debug('Duhamel lags recomputed in every sweep')
        support_lags = level_lags
    v_support = values[support]
    log.debug('Duhamel: {} support points, {} time levels'.format(
        support.size, m))

    def solve_block(columns):
        return _duhamel_block(columns, grid, levels, weights, final_lags,
                              support_lags, support, v_support, free, cfg)

    results = hlk.map_ordered(solve_block, _column_blocks(grid.N), jobs=jobs)
    kernel = np.empty((grid.N, grid.N))
    residual = 0.
    for columns, (block, block_residual) in zip(_column_blocks(grid.N),
                                                results):
        kernel[:, columns] = block
        residual = max(residual, block_residual)
    return grid_quad.KernelMatrix(float(t), grid, kernel,
                                  const.METHOD_DUHAMEL, residual)


def _duhamel_block(columns, grid, levels, weights, final_lags, support_lags,
                   support, v_support, free, cfg):
    points = grid.points
    h = grid.h
    m = len(levels) - 1
    # Level 0 is the grid delta I/h restricted to the support rows
    initial = (support[:, np.newaxis] == columns[np.newaxis, :]) / h
    iterate = np.empty((m + 1, support.size, columns.size))
    iterate[0] = initial
    for level in range(1, m + 1):
        iterate[level] = closed_form.dirichlet_kernel(
            levels[level], points[support, np.newaxis],
            points[np.newaxis, columns])
    sources = iterate[1:].copy()
    scaled_v = h * v_support[:, np.newaxis]

    history = []
    streak = 0
    for sweep in range(1, cfg.series_depth + 1):
        residual = 0.
        for level in range(1, m + 1):
            history_terms = np.matmul(
                support_lags(level), scaled_v * iterate[:level])
            accumulated = np.tensordot(weights[level, :level],
                                       history_terms, axes=1)
            updated = (sources[level - 1] - accumulated -
                       weights[level, level] * v_support[:, np.newaxis] *
                       iterate[level])
            residual = max(residual,
                           float(np.abs(updated - iterate[level]).max()))
            iterate[level] = updated
        history.append(residual)
        log.debug('Duhamel sweep {}: residual {:.3e}'.format(sweep,
                                                            residual))
        if not math.isfinite(residual):
            raise hlk.DivergenceError('Duhamel residual is not finite',
                                      history=history)
        if len(history) > 1 and residual > history[-2]:
            streak += 1
        else:
            streak = 0
        if streak >= const.DIVERGENCE_STREAK:
            raise hlk.DivergenceError(
                'Duhamel residual grew for {} consecutive sweeps'.format(
                    streak), history=history)
        if residual <= cfg.series_tol:
            break
    else:
        raise hlk.NumericFailure(
            'Duhamel did not reach tolerance {} in {} sweeps'.format(
                cfg.series_tol, cfg.series_depth),
            data={'residual': history[-1], 'history': history})

    history_terms = np.matmul(final_lags, scaled_v * iterate[:m])
    block = (free.values[:, columns] -
             np.tensordot(weights[m, :m], history_terms, axes=1))
    block[support] -= (weights[m, m] * v_support[:, np.newaxis] *
                       iterate[m])
    return block, history[-1]


def _second_difference_banded(values, h, scale):
    """Banded (I - scale * D) with D = d^2/dx^2 - diag(values)"""
    N = len(values)
    banded = np.empty((3, N))
    banded[0, :] = -scale / h ** 2
    banded[1, :] = 1. + 2. * scale / h ** 2 + scale * values
    banded[2, :] = -scale / h ** 2
    return banded


def _apply_generator(u, values, h):
    """D u with zero Dirichlet values at 0 and L + h"""
    result = -2. * u
    result[1:] += u[:-1]
    result[:-1] += u[1:]
    return result / h ** 2 - values[:, np.newaxis] * u


def _solve_banded(banded, rhs):
    try:
        return linalg.solve_banded((1, 1), banded, rhs, check_finite=False)
    except (linalg.LinAlgError, ValueError) as exc:
        raise hlk.NumericFailure('Banded solve failed: {}'.format(exc))


def crank_nicolson_kernel(V, t, grid, cfg=None, jobs=None):
    """Kernel by Crank-Nicolson evolution of the columns of I/h

    .. versionadded:: 0.1

    The first step is replaced by two implicit Euler half steps, which
    damps the oscillation of the delta initial datum.
    """
    _check_time(t)
    cfg = cfg or SolverConfig()
    if cfg.dt > t:
        raise hlk.InvalidArgument('dt={} exceeds t={}'.format(cfg.dt, t))
    steps = int(math.ceil(t / cfg.dt - 1e-9))
    dt = float(t) / steps
    h = grid.h
    values = potential.sample(V, grid)
    # Implicit Euler over dt/2 and the CN left side share I - dt/2 D
    implicit = _second_difference_banded(values, h, 0.5 * dt)
    log.debug('Crank-Nicolson: {} steps of {:.3e}'.format(steps, dt))

    def solve_block(columns):
        u = np.zeros((grid.N, columns.size))
        u[columns, np.arange(columns.size)] = 1. / h
        u = _solve_banded(implicit, u)
        u = _solve_banded(implicit, u)
        for _ in range(steps - 1):
            u = _solve_banded(implicit,
                              u + 0.5 * dt * _apply_generator(u, values, h))
        return u

    blocks = _column_blocks(grid.N)
    kernel = np.empty((grid.N, grid.N))
    for columns, block in zip(blocks, hlk.map_ordered(solve_block, blocks,
                                                      jobs=jobs)):
        kernel[:, columns] = block
    return grid_quad.KernelMatrix(float(t), grid, kernel,
                                  const.METHOD_CRANK_NICOLSON,
                                  dt ** 2 + h ** 2)


def lie_trotter_kernel(V, t, grid, cfg=None, jobs=None):
    """Kernel of the Lie-Trotter product (k_dt e^{-dt V})^n

    .. versionadded:: 0.1

    The step is at least max(dt, h^2): a Gaussian narrower than the grid
    spacing is not resolved by the point sampled convolution.
    """
    _check_time(t)
    cfg = cfg or SolverConfig()
    if cfg.dt > t:
        raise hlk.InvalidArgument('dt={} exceeds t={}'.format(cfg.dt, t))
    h = grid.h
    steps = max(1, int(t / max(cfg.dt, h ** 2) + 1e-9))
    dt = float(t) / steps
    free_step = closed_form.closed_form_kernel(dt, grid).values
    step = h * free_step * np.exp(-dt * potential.sample(V, grid))
    log.debug('Lie-Trotter: {} steps of {:.3e}'.format(steps, dt))
    kernel = np.linalg.matrix_power(step, steps) / h
    return grid_quad.KernelMatrix(float(t), grid, kernel,
                                  const.METHOD_LIE_TROTTER, dt)


def _mc_block(V, t, x, f, mc, block_index, count):
    rng = np.random.Generator(np.random.Philox(
        np.random.SeedSequence([mc.seed, block_index])))
    steps = max(1, int(math.ceil(t / mc.dt - 1e-9)))
    dt = float(t) / steps
    scale = math.sqrt(2. * dt)
    pairs = (count + 1) // 2 if mc.antithetic else count
    signs = np.array([1., -1.]) if mc.antithetic else np.array([1.])
    position = np.full((len(signs), pairs), float(x))
    weight = np.ones_like(position)
    exponent = np.zeros_like(position)
    alive = np.ones(position.shape, dtype=bool)
    potential_now = V.func(position)
    for _ in range(steps):
        normals = rng.standard_normal(pairs)
        new = position + scale * signs[:, np.newaxis] * normals
        alive &= new > 0
        # Brownian bridge of variance 2dt between two positive points
        weight = np.where(alive, weight * -np.expm1(
            -np.where(alive, position * new, 0.) / dt), 0.)
        potential_new = np.where(alive, V.func(np.where(alive, new, x)), 0.)
        exponent += np.where(alive, 0.5 * dt * (potential_now +
                                                potential_new), 0.)
        position = np.where(alive, new, x)
        potential_now = potential_new
    payoff = np.where(alive, weight * np.exp(-exponent) *
                      np.asarray(f(position), dtype=float), 0.)
    return payoff.mean(axis=0)


def feynman_kac_estimate(V, t, x, f, mc=None, jobs=None):
    """Monte Carlo estimate of (T_V(t) f)(x) with its standard error

    .. versionadded:: 0.1

    :param f: Vectorized bounded function of the final position
    :param mc: MCConfig

    Paths are grouped in blocks of mc.block; block b draws from
    Philox(SeedSequence([seed, b])), so the estimate does not depend on
    *jobs*. With antithetic pairs each sample is a pair average.
    """
    _check_time(t)
    if not x > 0:
        raise hlk.InvalidArgument('x must be positive, got {}'.format(x))
    mc = mc or MCConfig()
    counts = [min(mc.block, mc.paths - start)
              for start in range(0, mc.paths, mc.block)]

    def run(item):
        block_index, count = item
        return _mc_block(V, t, x, f, mc, block_index, count)

    samples = np.concatenate(hlk.map_ordered(run, enumerate(counts),
                                             jobs=jobs))
    mean = float(samples.mean())
    if samples.size < 2:
        return mean, 0.
    return mean, float(samples.std(ddof=1) / math.sqrt(samples.size))


SOLVERS = {
    const.METHOD_DUHAMEL: duhamel_kernel,
    const.METHOD_CRANK_NICOLSON: crank_nicolson_kernel,
    const.METHOD_LIE_TROTTER: lie_trotter_kernel,
}


def solve(V, t, grid, method=const.METHOD_DUHAMEL, cfg=None, jobs=None):
    """Compute K^V_t with the named method

    .. versionadded:: 0.1

    'closed_form' is only available for the zero potential.
    """
    if method == const.METHOD_CLOSED_FORM:
        if np.any(potential.sample(V, grid)):
            raise hlk.InvalidArgument('closed_form needs the zero potential')
        return closed_form.closed_form_kernel(t, grid)
    if method not in SOLVERS:
        raise hlk.InvalidArgument('Unknown solver method {!r}'.format(method))
    return SOLVERS[method](V, t, grid, cfg=cfg, jobs=jobs)


def apply_kernel(kernel, f, rule=None):
    """(T f)(x_i) = integral of K(x_i, y) f(y) dy on the grid"""
    samples = np.asarray(f(kernel.grid.points), dtype=float)
    if rule is None:
        rule = grid_quad.rule_for(kernel.grid)
    return kernel.values.dot(rule.weights * samples)


def truncation_sweep(V, t, grid, levels, method=const.METHOD_DUHAMEL,
                     cfg=None, jobs=None):
    """Sup norm differences along the truncations (V ^ n) v (-n)

    .. versionadded:: 0.1

    :param levels: Increasing truncation levels

    Returns [(n, delta)], delta comparing level n with the next level and
    the last level with V itself.
    """
    levels = list(levels)
    if any(later <= earlier for earlier, later in zip(levels, levels[1:])):
        raise hlk.InvalidArgument('Truncation levels must increase')
    kernels = [solve(potential.truncate(V, n), t, grid, method=method,
                     cfg=cfg, jobs=jobs).values for n in levels]
    kernels.append(solve(V, t, grid, method=method, cfg=cfg,
                         jobs=jobs).values)
    return [(n, float(np.abs(current - following).max()))
            for n, current, following in zip(levels, kernels, kernels[1:])]
