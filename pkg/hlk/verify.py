# -*- coding: utf-8 -*-


"""Numerical verification of the half-line kernel inequalities

Every ``check_*`` function sweeps its parameters, records the worst
lhs/rhs ratio with the parameters where it occurs and returns an
InequalityCheck dict (see :mod:`hlk.report`). Closed form checks are exact
up to rounding; solver backed checks carry a slack matching the solver
accuracy.
"""


import json
import logging
import math
import time

import numpy as np
from scipy import integrate as sp_integrate

import hlk
from hlk import closed_form
from hlk import const
from hlk import engine
from hlk import grid as grid_quad
from hlk import potential
from hlk import report


log = logging.getLogger('hlk-verify')


def tolerance(name, overrides=None):
    """Tolerance for a family of checks, *overrides* win"""
    overrides = overrides or {}
    return float(overrides.get(name, const.TOLERANCES[name]))


def grid_for(V, t, N=const.DEFAULT_N, x_max=const.DEFAULT_X_MAX):
    """Grid long enough for V's support and the Gaussian tail at time t

    The support of V takes at most half of the domain. N is rounded up to
    an even count so that Simpson applies.
    """
    N = int(N) + int(N) % 2
    length = max(x_max, 2. * V.support_end)
    return grid_quad.make_grid(grid_quad.auto_length(t, length), N)


def solve_cached(V, t, grid, method=const.METHOD_DUHAMEL, cfg=None,
                 jobs=None, cache=None):
    """engine.solve with an optional dict cache"""
    if cache is None:
        return engine.solve(V, t, grid, method=method, cfg=cfg, jobs=jobs)
    key = (json.dumps(potential.describe(V), sort_keys=True), float(t),
           grid, method)
    if key not in cache:
        cache[key] = engine.solve(V, t, grid, method=method, cfg=cfg,
                                  jobs=jobs)
    return cache[key]


def _mesh(grid):
    points = grid.points
    return points[:, np.newaxis], points[np.newaxis, :]


def _significant(values, level=const.UNDERFLOW_MASK):
    return values >= level * np.abs(values).max()


def _require_alpha(V, grid):
    alpha = potential.alpha_of(V, grid)
    if not alpha < 1:
        raise hlk.InvalidArgument(
            'Integral condition needs alpha < 1, got {:.6g}'.format(alpha))
    return alpha


def check_sandwich(t_values, N=const.DEFAULT_N, x_max=const.DEFAULT_X_MAX,
                   tolerances=None):
    """1/2 (1 ^ xy/t) g_t <= k_t <= (1 ^ xy/t) g_t on grid sweeps

    .. versionadded:: 0.1

    The ratio is max(lower / k, k / upper); entries where k underflows to
    zero are skipped.
    """
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for t in t_values:
        x, y = _mesh(grid_for(potential.zero(), t, N, x_max))
        kernel = closed_form.dirichlet_kernel(t, x, y)
        lower, upper = closed_form.sandwich_bounds(t, x, y)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratios = np.maximum(lower / kernel, kernel / upper)
        tracker.update(ratios, mask=(kernel > 0) & (lower > 0), t=t, x=x,
                       y=y)
    return report.new_check(
        'sandwich', {'t_values': list(t_values), 'N': N}, tracker,
        1. + tolerance('closed_form', tolerances), started)


def stochasticity_integral(t, y, N=None, rule_kind=const.RULE_SIMPSON):
    """Integral of (x/y) k_t(x, y) dx over (0, y + 16 sqrt(t)]

    Without *N* the spacing is sqrt(t)/20.
    """
    length = y + 16. * math.sqrt(t)
    if N is None:
        N = int(math.ceil(length / (math.sqrt(t) / 20.)))
        N += N % 2
    grid = grid_quad.make_grid(length, N)
    x = grid.points
    integrand = x / y * closed_form.dirichlet_kernel(t, x, y)
    return float(grid_quad.integrate(integrand,
                                     grid_quad.rule_for(grid, rule_kind)))


def check_stochasticity(t_values, y_values, N=None, tolerances=None):
    """Boundary weighted mass identity: integral of (x/y) k_t(x, y) dx = 1

    .. versionadded:: 0.1

    The ratio is 1 + |integral - 1|.
    """
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for t in t_values:
        for y in y_values:
            error = abs(stochasticity_integral(t, y, N) - 1.)
            tracker.update(1. + error, t=t, y=y)
    return report.new_check(
        'stochasticity', {'t_values': list(t_values),
                          'y_values': list(y_values), 'N': N},
        tracker, 1. + tolerance('quadrature', tolerances), started)


def check_weighted_ultracontractivity(t_values, N=const.DEFAULT_N,
                                      x_max=const.DEFAULT_X_MAX,
                                      tolerances=None):
    """sup k_t(x, y) / (x y) <= (4 pi)^{-1/2} t^{-3/2}

    .. versionadded:: 0.1
    """
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for t in t_values:
        x, y = _mesh(grid_for(potential.zero(), t, N, x_max))
        bound = (4. * math.pi) ** -0.5 * t ** -1.5
        ratios = closed_form.dirichlet_kernel(t, x, y) / (x * y) / bound
        tracker.update(ratios, t=t, x=x, y=y)
    return report.new_check(
        'weighted_ultracontractivity', {'t_values': list(t_values), 'N': N},
        tracker, 1. + tolerance('ultracontractivity', tolerances), started)


def laplace_transform(lam, x, y, nodes=4001, t_min=1e-18):
    """Integral of e^{-lam t} k_t(x, y) dt over [t_min, 50/lam]

    Simpson in u = ln t on log-spaced nodes.
    """
    u = np.linspace(math.log(t_min), math.log(50. / lam), nodes)
    t = np.exp(u)
    integrand = np.exp(-lam * t) * closed_form.dirichlet_kernel(t, x, y) * t
    return float(sp_integrate.simpson(integrand, x=u))


def check_green_laplace(lam_values=None, points=None, tolerances=None):
    """G_lam(x, y) equals the Laplace transform of k_t(x, y) in t

    .. versionadded:: 0.1

    The ratio is 1 + relative error.
    """
    started = time.perf_counter()
    lam_values = list(lam_values or const.DEFAULT_LAMBDA_VALUES)
    points = list(points or const.DEFAULT_GREEN_POINTS)
    tracker = report.RatioTracker()
    for lam in lam_values:
        for x, y in points:
            exact = float(closed_form.green_function(lam, x, y))
            numeric = laplace_transform(lam, x, y)
            tracker.update(1. + abs(numeric - exact) / exact, lam=lam, x=x,
                           y=y)
    return report.new_check(
        'green_laplace', {'lambda_values': lam_values,
                          'points': [list(point) for point in points]},
        tracker, 1. + tolerance('quadrature', tolerances), started)


def _weighted_l1_check(name, V, t_values, weights_for, bound_for, method,
                       N, cfg, jobs, cache, tolerances, params):
    started = time.perf_counter()
    tracker = report.RatioTracker()
    alpha = None
    for t in t_values:
        grid = grid_for(V, t, N)
        alpha = _require_alpha(V, grid)
        kernel = solve_cached(V, t, grid, method, cfg, jobs, cache)
        rule = grid_quad.rule_for(grid)
        for label, weight in weights_for(t):
            columns = grid_quad.column_integrals(kernel, weight, rule)
            ratios = columns / bound_for(t, label, alpha)
            tracker.update(ratios, t=t, xi=label, y=grid.points)
    params = dict(params, potential=potential.describe(V), method=method,
                  N=N, alpha=alpha, t_values=list(t_values))
    return report.new_check(name, params, tracker,
                            1. + tolerance('solver', tolerances), started)


def check_L1_exponential(V, xi_values, t_values,
                         method=const.METHOD_DUHAMEL, N=const.DEFAULT_N,
                         cfg=None, jobs=None, cache=None, tolerances=None):
    """||rho_xi T_V(t) rho_xi^{-1}||_{1->1} <= e^{xi^2 t} / (1 - alpha)

    .. versionadded:: 0.1

    Raises :class:`hlk.InvalidArgument` when alpha >= 1.
    """
    xi_values = list(xi_values)
    return _weighted_l1_check(
        'L1_exponential', V, t_values,
        lambda t: [(xi, grid_quad.exponential(xi)) for xi in xi_values],
        lambda t, xi, alpha: math.exp(xi ** 2 * t) / (1. - alpha),
        method, N, cfg, jobs, cache, tolerances, {'xi_values': xi_values})


def check_L1_boundary_weighted(V, t_values, method=const.METHOD_DUHAMEL,
                               N=const.DEFAULT_N, cfg=None, jobs=None,
                               cache=None, tolerances=None):
    """||m^{-1} T_V(t) m|| on L1(m^2) <= 1 / (1 - alpha), m(x) = x

    .. versionadded:: 0.1
    """
    return _weighted_l1_check(
        'L1_boundary_weighted', V, t_values,
        lambda t: [(0., grid_quad.boundary())],
        lambda t, xi, alpha: 1. / (1. - alpha),
        method, N, cfg, jobs, cache, tolerances, {})


def check_mass_bound(V, t_values, method=const.METHOD_DUHAMEL,
                     N=const.DEFAULT_N, cfg=None, jobs=None, cache=None,
                     tolerances=None):
    """Unweighted column mass of K^V <= 1 / (1 - alpha)"""
    return _weighted_l1_check(
        'mass_bound', V, t_values,
        lambda t: [(0., grid_quad.unweighted())],
        lambda t, xi, alpha: 1. / (1. - alpha),
        method, N, cfg, jobs, cache, tolerances, {})


def check_davies_gaffney(V, x, y, r, eps, t_values,
                         method=const.METHOD_DUHAMEL, N=const.DEFAULT_N,
                         cfg=None, jobs=None, cache=None, tolerances=None):
    """||1_{B(y, eps)} T_V(t) 1_{B(x, eps)}||_{2->2} <= e^{-r^2/4t}

    .. versionadded:: 0.1

    :param r: Distance between the balls, 0 < r < |x - y|
    :param eps: Ball radius, eps <= (|x - y| - r) / 2
    """
    distance = abs(x - y)
    if not 0 < r < distance:
        raise hlk.InvalidArgument('Need 0 < r < |x - y|, got r={} and '
                                  '|x - y|={}'.format(r, distance))
    if not 0 < eps <= (distance - r) / 2.:
        raise hlk.InvalidArgument('Need 0 < eps <= (|x - y| - r)/2, got '
                                  'eps={}'.format(eps))
    if min(x, y) - eps <= 0:
        raise hlk.InvalidArgument('Balls must lie inside (0, L)')
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for t in t_values:
        grid = grid_for(V, t, N, x_max=max(x, y) + eps)
        kernel = solve_cached(V, t, grid, method, cfg, jobs, cache)
        points = grid.points
        rows = np.flatnonzero(np.abs(points - y) < eps)
        columns = np.flatnonzero(np.abs(points - x) < eps)
        block = grid.h * kernel.values[np.ix_(rows, columns)]
        norm = grid_quad.largest_singular_value(block)
        tracker.update(norm / math.exp(-r ** 2 / (4. * t)), t=t)
    params = {'potential': potential.describe(V), 'x': x, 'y': y, 'r': r,
              'eps': eps, 't_values': list(t_values), 'method': method,
              'N': N}
    return report.new_check('davies_gaffney', params, tracker,
                            1. + tolerance('solver', tolerances), started)


def envelope_tracker(V, t_values, kind, method=const.METHOD_DUHAMEL,
                     N=const.DEFAULT_N, grid=None, cfg=None, jobs=None,
                     cache=None, c=1.):
    """RatioTracker of K^V / envelope(kind, c) over significant entries"""
    tracker = report.RatioTracker()
    params = closed_form.EnvelopeParams(c, kind)
    for t in t_values:
        current = grid or grid_for(V, t, N)
        kernel = solve_cached(V, t, current, method, cfg, jobs, cache)
        x, y = _mesh(current)
        ratios = kernel.values / closed_form.envelope(kind, params, t, x, y)
        tracker.update(ratios, mask=_significant(kernel.values), t=t, x=x,
                       y=y)
    return tracker


def empirical_constant(V, t_values, kind='main', **kwargs):
    """Return (c_emp, witness): sup of K^V over the envelope with c = 1"""
    tracker = envelope_tracker(V, t_values, kind, **kwargs)
    return tracker.max_ratio, tracker.witness


def empirical_constant_main(V, t_values, grid=None, **kwargs):
    """Empirical constant of the main kernel bound

    .. versionadded:: 0.1

    sup of k_t^V / ((1 ^ (xy/t)(1 + (x-y)^2/4t)^{3/2}) t^{-1/2}
    e^{-(x-y)^2/4t}); finite for every admissible sweep. Reported, never
    compared with a reference value.
    """
    return empirical_constant(V, t_values, 'main', grid=grid, **kwargs)[0]


def check_exponential_bound(V, t_values, c=None, xi_values=(-2., 0., 2.),
                            method=const.METHOD_DUHAMEL, N=const.DEFAULT_N,
                            cfg=None, jobs=None, cache=None,
                            tolerances=None):
    """Gaussian bound k^V <= c t^{-1/2} e^{-(x-y)^2/4t} and its xi family

    .. versionadded:: 0.1

    The family sup e^{xi (x-y)} k^V(x, y) <= c t^{-1/2} e^{xi^2 t} is the
    exponentially weighted form the Gaussian bound is recovered from by
    choosing xi = (x - y)/2t. Without *c* the empirical constant is used.
    """
    started = time.perf_counter()
    if c is None:
        c = empirical_constant(V, t_values, 'exponential', method=method,
                               N=N, cfg=cfg, jobs=jobs, cache=cache)[0]
    tracker = envelope_tracker(V, t_values, 'exponential', method=method,
                               N=N, cfg=cfg, jobs=jobs, cache=cache, c=c)
    for t in t_values:
        grid = grid_for(V, t, N)
        kernel = solve_cached(V, t, grid, method, cfg, jobs, cache)
        x, y = _mesh(grid)
        significant = _significant(kernel.values)
        for xi in xi_values:
            lhs = np.exp(xi * (x - y)) * kernel.values
            rhs = c * t ** -0.5 * math.exp(xi ** 2 * t)
            tracker.update(lhs / rhs, mask=significant, t=t, x=x, y=y, xi=xi)
    params = {'potential': potential.describe(V), 'c': c,
              't_values': list(t_values), 'xi_values': list(xi_values),
              'method': method, 'N': N}
    return report.new_check('exponential_bound', params, tracker,
                            1. + tolerance('solver', tolerances), started)


def check_boundary_bound(V, t_values, C=None, method=const.METHOD_DUHAMEL,
                         N=const.DEFAULT_N, cfg=None, jobs=None, cache=None,
                         tolerances=None):
    """k^V <= C x y t^{-3/2} (1 + (x-y)^2/4t)^{3/2} e^{-(x-y)^2/4t}

    .. versionadded:: 0.1
    """
    started = time.perf_counter()
    if C is None:
        C = empirical_constant(V, t_values, 'boundary', method=method, N=N,
                               cfg=cfg, jobs=jobs, cache=cache)[0]
    tracker = envelope_tracker(V, t_values, 'boundary', method=method, N=N,
                               cfg=cfg, jobs=jobs, cache=cache, c=C)
    params = {'potential': potential.describe(V), 'C': C,
              't_values': list(t_values), 'method': method, 'N': N}
    return report.new_check('boundary_bound', params, tracker,
                            1. + tolerance('solver', tolerances), started)


def check_positivity(V, t_values, method=const.METHOD_DUHAMEL,
                     N=const.DEFAULT_N, cfg=None, jobs=None, cache=None,
                     tolerances=None):
    """K^V >= -tol * max K^V; ratio is 1 + max(-K) / max K"""
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for t in t_values:
        grid = grid_for(V, t, N)
        values = solve_cached(V, t, grid, method, cfg, jobs, cache).values
        negative = max(0., -float(values.min())) / float(values.max())
        tracker.update(1. + negative, t=t)
    params = {'potential': potential.describe(V), 't_values': list(t_values),
              'method': method, 'N': N}
    return report.new_check('positivity_' + method, params, tracker,
                            1. + tolerance('positivity', tolerances),
                            started)


def check_symmetry(V, t_values, method=const.METHOD_CRANK_NICOLSON,
                   N=const.DEFAULT_N, cfg=None, jobs=None, cache=None,
                   tolerances=None):
    """Symmetric methods: 1 + max |K - K^T| / max |K|"""
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for t in t_values:
        grid = grid_for(V, t, N)
        values = solve_cached(V, t, grid, method, cfg, jobs, cache).values
        tracker.update(1. + float(np.abs(values - values.T).max()) /
                       float(np.abs(values).max()), t=t)
    params = {'potential': potential.describe(V), 't_values': list(t_values),
              'method': method, 'N': N}
    return report.new_check('symmetry_' + method, params, tracker,
                            1. + tolerance('positivity', tolerances),
                            started)


def check_domination(V, W, t_values, method=const.METHOD_DUHAMEL,
                     N=const.DEFAULT_N, cfg=None, jobs=None, cache=None,
                     tolerances=None):
    """V >= W pointwise implies K^V <= K^W

    The ratio is 1 + max(K^V - K^W)_+ / max K^W.
    """
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for t in t_values:
        grid = grid_for(V if V.support_end >= W.support_end else W, t, N)
        upper = solve_cached(W, t, grid, method, cfg, jobs, cache).values
        lower = solve_cached(V, t, grid, method, cfg, jobs, cache).values
        excess = max(0., float((lower - upper).max())) / float(upper.max())
        tracker.update(1. + excess, t=t)
    params = {'V': potential.describe(V), 'W': potential.describe(W),
              't_values': list(t_values), 'method': method, 'N': N}
    return report.new_check('domination', params, tracker,
                            1. + tolerance('solver', tolerances), started)


def interior(grid, t):
    """Indices at least TAIL_WIDTHS sqrt(t) away from the far end L

    Grid solvers put a Dirichlet wall at L + h, Duhamel does not; the two
    agree only away from it.
    """
    return np.flatnonzero(grid.points <=
                          grid.L - const.TAIL_WIDTHS * math.sqrt(t))


def _relative_difference(reference, other, level=const.AGREEMENT_MASK):
    """Sup of |other - reference| over significant entries, over max"""
    scale = reference.max()
    mask = reference >= level * scale
    return float(np.abs(other - reference)[mask].max() / scale)


def check_cross_method(V, t_values, N=const.DEFAULT_N, cfg=None, jobs=None,
                       cache=None, tolerances=None):
    """Duhamel against Crank-Nicolson and Lie-Trotter

    Returns two checks; the ratio is 1 + the sup difference over interior
    entries >= 1e-4 of the maximum, relative to the maximum.
    """
    checks = []
    pairs = [(const.METHOD_CRANK_NICOLSON, 'solver'),
             (const.METHOD_LIE_TROTTER, 'lie_trotter')]
    for method, tol_name in pairs:
        started = time.perf_counter()
        tracker = report.RatioTracker()
        for t in t_values:
            grid = grid_for(V, t, N)
            inner = np.ix_(*[interior(grid, t)] * 2)
            reference = solve_cached(V, t, grid, const.METHOD_DUHAMEL, cfg,
                                     jobs, cache).values[inner]
            other = solve_cached(V, t, grid, method, cfg, jobs,
                                 cache).values[inner]
            tracker.update(1. + _relative_difference(reference, other), t=t)
        params = {'potential': potential.describe(V),
                  't_values': list(t_values), 'N': N}
        checks.append(report.new_check(
            'cross_method_duhamel_' + method, params, tracker,
            1. + tolerance(tol_name, tolerances), started))
    return checks


def smooth_bump(y):
    """Test function e^{-(y - 1.5)^2}"""
    return np.exp(-(np.asarray(y, dtype=float) - 1.5) ** 2)


def unit(y):
    return np.ones_like(np.asarray(y, dtype=float))


def mc_ratio(gap, error, paths):
    """gap / (3 stderr) with the standard error floored at 1 / paths

    When every path returns the same value the sample deviation is zero;
    1 / paths is the resolution of a frequency over *paths* paths.
    """
    return gap / (const.SIGMA_RULE * max(error, 1. / paths))


def check_monte_carlo(V, t_values, x_values=(0.5, 1.5, 3.), mc=None,
                      N=const.DEFAULT_N, cfg=None, jobs=None, cache=None,
                      functions=None):
    """Feynman-Kac estimates within three standard errors of quadrature

    The ratio is |mc - quadrature| / (3 stderr) at grid points nearest to
    *x_values*, for f = 1 and a smooth bump.
    """
    started = time.perf_counter()
    mc = mc or engine.MCConfig()
    functions = functions or [('unit', unit), ('bump', smooth_bump)]
    tracker = report.RatioTracker()
    for t in t_values:
        grid = grid_for(V, t, N)
        kernel = solve_cached(V, t, grid, const.METHOD_DUHAMEL, cfg, jobs,
                              cache)
        for index, (label, func) in enumerate(functions):
            quadrature = engine.apply_kernel(kernel, func)
            for x in x_values:
                i = int(np.argmin(np.abs(grid.points - x)))
                point = float(grid.points[i])
                mean, error = engine.feynman_kac_estimate(V, t, point, func,
                                                          mc, jobs=jobs)
                gap = abs(mean - quadrature[i])
                tracker.update(mc_ratio(gap, error, mc.paths), t=t, x=point,
                               function=index)
    params = {'potential': potential.describe(V), 't_values': list(t_values),
              'x_values': list(x_values),
              'functions': [label for label, _ in functions],
              'paths': mc.paths, 'N': N}
    return report.new_check('cross_method_monte_carlo', params, tracker, 1.,
                            started)


def check_free_survival(t_values, x_values=(0.2, 1., 3.), mc=None,
                        jobs=None):
    """Monte Carlo survival of free paths against erf(x / sqrt(4t))

    The ratio is |mc - exact| / (3 stderr).
    """
    started = time.perf_counter()
    mc = mc or engine.MCConfig()
    tracker = report.RatioTracker()
    V = potential.zero()
    for t in t_values:
        for x in x_values:
            mean, error = engine.feynman_kac_estimate(V, t, x, unit, mc,
                                                      jobs=jobs)
            gap = abs(mean - float(closed_form.survival_probability(t, x)))
            tracker.update(mc_ratio(gap, error, mc.paths), t=t, x=x)
    params = {'t_values': list(t_values), 'x_values': list(x_values),
              'paths': mc.paths}
    return report.new_check('free_survival', params, tracker, 1., started)


def default_lambda_values(xi):
    return [value for value in (xi ** 2 + 0.1, 0.5, 1., 2., 5., 10.)
            if value > xi ** 2]


def check_miyadera(potentials, xi_values=(-1., 0., 1.), grid=None,
                   tolerances=None):
    """miyadera_norm(V, lam, xi) <= alpha_of(V) over lambda > xi^2

    .. versionadded:: 0.1
    """
    started = time.perf_counter()
    grid = grid or grid_quad.make_grid(60., 3000)
    tracker = report.RatioTracker()
    for index, V in enumerate(potentials):
        alpha = potential.alpha_of(V, grid)
        if alpha == 0:
            continue
        for xi in xi_values:
            for lam in default_lambda_values(xi):
                ratio = potential.miyadera_norm(V, lam, xi, grid) / alpha
                tracker.update(ratio, potential=index, xi=xi, lam=lam)
    params = {'potentials': [potential.describe(V) for V in potentials],
              'xi_values': list(xi_values), 'L': grid.L, 'N': grid.N}
    return report.new_check('miyadera', params, tracker,
                            1. + tolerance('quadrature', tolerances), started)


def check_miyadera_m_weighted(potentials, omega_values=(0.1, 1., 10.),
                              grid=None, tolerances=None):
    """sup_y of the integral of (x/y) G_omega |V| <= alpha_of(V)"""
    started = time.perf_counter()
    grid = grid or grid_quad.make_grid(60., 3000)
    tracker = report.RatioTracker()
    for index, V in enumerate(potentials):
        alpha = potential.alpha_of(V, grid)
        if alpha == 0:
            continue
        for omega in omega_values:
            ratio = potential.miyadera_norm_m_weighted(V, omega, grid) / alpha
            tracker.update(ratio, potential=index, omega=omega)
    params = {'potentials': [potential.describe(V) for V in potentials],
              'omega_values': list(omega_values), 'L': grid.L, 'N': grid.N}
    return report.new_check('miyadera_m_weighted', params, tracker,
                            1. + tolerance('quadrature', tolerances), started)


def check_form_smallness(potentials, grid=None, tolerances=None):
    """Discrete form bound constant against alpha_of(V)"""
    started = time.perf_counter()
    grid = grid or grid_quad.make_grid(20., 1000)
    tracker = report.RatioTracker()
    for index, V in enumerate(potentials):
        alpha = potential.alpha_of(V, grid)
        if alpha == 0:
            continue
        ratio = potential.form_smallness_ratio(V, grid) / alpha
        tracker.update(ratio, potential=index)
    params = {'potentials': [potential.describe(V) for V in potentials],
              'L': grid.L, 'N': grid.N}
    return report.new_check('form_smallness', params, tracker,
                            1. + tolerance('solver', tolerances), started)


def counterexample_ratio(xi, t, L, h=None):
    """sup_y of the x e^{xi x} weighted column integral of k_t over e^{xi^2 t}

    Trapezoid quadrature on nested grids of spacing min(0.05, sqrt(t)/10)
    makes the value non-decreasing in L.
    """
    h = h or min(0.05, math.sqrt(t) / 10.)
    grid = grid_quad.make_grid(L, int(round(L / h)))
    kernel = closed_form.closed_form_kernel(t, grid)
    columns = grid_quad.column_integrals(
        kernel, grid_quad.exponential_boundary(xi),
        grid_quad.rule_for(grid, const.RULE_TRAPEZOID))
    return float(columns.max()) / math.exp(xi ** 2 * t)


def truncation_bound(xi, t, L):
    """True when L misses part of the weighted Gaussian mass

    x e^{xi x} k_t(x, y) peaks near x = y + 2 xi t with variance 2t, so
    L below 2 xi t + 10 sqrt(t) cuts the column of y = 0.
    """
    reach = 2. * max(xi, 0.) * t + const.TAIL_WIDTHS * math.sqrt(t)
    return L < reach


def counterexample_demo(xi, t_values=(1., 4., 16.),
                        L_values=(10., 20., 40., 80.)):
    """Table of the boundary and exponentially weighted L1 norm of T(t)

    .. versionadded:: 0.1

    Rows hold xi, t, L, the norm divided by e^{xi^2 t} and whether the
    domain truncation binds. For xi > 0 no uniform constant exists: the
    ratio grows with xi^2 t.
    """
    rows = []
    for t in t_values:
        for L in L_values:
            rows.append({'xi': xi, 't': t, 'L': L,
                         'ratio': counterexample_ratio(xi, t, L),
                         'truncated': truncation_bound(xi, t, L)})
    return rows


def check_counterexample_nonpositive(xi_values=(-1., 0.), t_values=(1., 4.,
                                                                    16.),
                                     L_values=(10., 20., 40.),
                                     tolerances=None):
    """For xi <= 0 the composite weighted norm stays <= e^{xi^2 t}"""
    started = time.perf_counter()
    tracker = report.RatioTracker()
    for xi in xi_values:
        if xi > 0:
            raise hlk.InvalidArgument('Expected xi <= 0, got {}'.format(xi))
        for row in counterexample_demo(xi, t_values, L_values):
            tracker.update(row['ratio'], xi=xi, t=row['t'], L=row['L'])
    params = {'xi_values': list(xi_values), 't_values': list(t_values),
              'L_values': list(L_values)}
    return report.new_check('counterexample_nonpositive_xi', params, tracker,
                            1. + tolerance('solver', tolerances), started)


def growth_factors(rows):
    """Ratio growth along L (per t) and along t (at the largest L)

    Rows where the domain truncation binds are left out. A t without such
    a row has no growth_L entry, and growth_t needs two times at the
    largest kept L.
    """
    factors = {}
    kept = [row for row in rows if not row['truncated']]
    if len(kept) < len(rows):
        log.info('{} truncation bound rows left out of the growth '
                 'factors'.format(len(rows) - len(kept)))
    by_t = {}
    for row in kept:
        by_t.setdefault(row['t'], []).append(row)
    for t, group in sorted(by_t.items()):
        group = sorted(group, key=lambda row: row['L'])
        factors['growth_L_t{:g}'.format(t)] = (group[-1]['ratio'] /
                                               group[0]['ratio'])
    if not kept:
        return factors
    largest = max(row['L'] for row in kept)
    along_t = sorted((row for row in kept if row['L'] == largest),
                     key=lambda row: row['t'])
    if len(along_t) > 1:
        factors['growth_t'] = along_t[-1]['ratio'] / along_t[0]['ratio']
    return factors
