# -*- coding: utf-8 -*-


"""Finite-state positive semigroups as exact oracles

A DiscreteSemigroup lives on n states with measure weights mu. Its
generator A has nonnegative off-diagonal entries and is symmetric in the
mu-weighted sense; the diagonal holds a strictly positive killing rate so
that e^{tA} is a contraction on L1(mu), L2(mu) and L_inf. Perturbations by a
potential vector V are computed exactly with the scipy matrix exponential.

Trials are independent. Trial i of a run with master seed s draws from
``numpy.random.default_rng([s, i])`` and has 2 + i % 5 states.
"""


import collections
import logging
import math
import time

import numpy as np
from scipy import linalg

import hlk
from hlk import const
from hlk import report


log = logging.getLogger('hlk-oracle')
INF = float('inf')

DiscreteSemigroup = collections.namedtuple('DiscreteSemigroup', [
    'n',
    'mu',
    'A',
    'V',
    'kappa',
])


class InterpolationCase(collections.namedtuple('InterpolationCase', [
        'p0', 'q0', 'p1', 'q1', 'theta', 't'])):
    """Exponent pairs at both ends, interpolation parameter and time"""

    __slots__ = ()

    @property
    def p_theta(self):
        return interpolate_exponent(self.p0, self.p1, self.theta)

    @property
    def q_theta(self):
        return interpolate_exponent(self.q0, self.q1, self.theta)

    def at(self, theta):
        """Exponent pair (p, q) at another value of theta"""
        return (interpolate_exponent(self.p0, self.p1, theta),
                interpolate_exponent(self.q0, self.q1, theta))


def interpolate_exponent(p0, p1, theta):
    """1/p = (1 - theta)/p0 + theta/p1

    >>> from hlk import oracle
    >>> oracle.interpolate_exponent(1., float('inf'), 0.5)
    2.0
    """
    inverse = (1. - theta) / p0 + theta / p1
    return INF if inverse == 0 else 1. / inverse


def conjugate_exponent(p):
    if p == 1:
        return INF
    if p == INF:
        return 1.
    return p / (p - 1.)


def trial_rng(seed, trial):
    return np.random.default_rng([int(seed), int(trial)])


def trial_states(trial):
    span = const.MAX_STATES - const.MIN_STATES + 1
    return const.MIN_STATES + trial % span


def new_semigroup(mu, S, kappa, V):
    """Build a DiscreteSemigroup from symmetric rates S

    A_ij = S_ij / mu_i off the diagonal and
    A_ii = -sum_k S_ik / mu_i - kappa_i.
    """
    mu = np.asarray(mu, dtype=float)
    S = np.array(S, dtype=float)
    kappa = np.asarray(kappa, dtype=float)
    if np.any(mu <= 0):
        raise hlk.InvalidArgument('State weights must be positive')
    if np.any(S < 0) or not np.allclose(S, S.T):
        raise hlk.InvalidArgument('Rates must be symmetric and nonnegative')
    if np.any(kappa < 0):
        raise hlk.InvalidArgument('Killing rates must be nonnegative')
    np.fill_diagonal(S, 0.)
    A = S / mu[:, np.newaxis]
    A[np.diag_indices_from(A)] = -S.sum(axis=1) / mu - kappa
    return DiscreteSemigroup(len(mu), mu, A, np.asarray(V, dtype=float),
                             kappa)


def random_semigroup(rng, n=None, potential_range=(0., 2.),
                     kill_range=(0.05, 0.5)):
    """Random self-adjoint positive semigroup

    .. versionadded:: 0.1

    :param rng: numpy Generator
    :param n: State count, drawn from [2, 6] when None
    :param potential_range: Uniform range of V, or a callable
                            (rng, kappa) -> V
    :param kill_range: Uniform range of the killing rates
    """
    if n is None:
        n = int(rng.integers(const.MIN_STATES, const.MAX_STATES + 1))
    if not const.MIN_STATES <= n <= const.MAX_STATES:
        raise hlk.InvalidArgument('State count must be in [{}, {}], got '
                                  '{}'.format(const.MIN_STATES,
                                              const.MAX_STATES, n))
    mu = rng.uniform(0.5, 2., n)
    rates = rng.uniform(0., 1., (n, n))
    kappa = rng.uniform(kill_range[0], kill_range[1], n)
    if callable(potential_range):
        V = potential_range(rng, kappa)
    else:
        V = rng.uniform(potential_range[0], potential_range[1], n)
    return new_semigroup(mu, (rates + rates.T) / 2., kappa, V)


def is_self_adjoint(S):
    weighted = S.mu[:, np.newaxis] * S.A
    return bool(np.allclose(weighted, weighted.T))


def with_potential(S, V):
    return S._replace(V=np.asarray(V, dtype=float))


def absorbed(S, W):
    """Semigroup generated by A - V, perturbed next by W"""
    return S._replace(A=S.A - np.diag(S.V), V=np.asarray(W, dtype=float))


def semigroup_at(S, V_scale, t):
    """e^{t (A - V_scale diag(V))}, clipped at zero

    .. versionadded:: 0.1

    >>> import numpy as np
    >>> from hlk import oracle
    >>> S = oracle.new_semigroup([1., 1.], np.zeros((2, 2)), [0., 0.],
    ...                          [0., 0.])
    >>> oracle.semigroup_at(S, 1., 0.).tolist()
    [[1.0, 0.0], [0.0, 1.0]]
    """
    if not t >= 0:
        raise hlk.InvalidArgument('t must be nonnegative, got {}'.format(t))
    generator = S.A - V_scale * np.diag(S.V)
    return np.clip(linalg.expm(t * generator), 0., None)


def _lp(values, p, mu):
    """L_p(mu) norms of the columns of *values*"""
    values = np.abs(values)
    if p == INF:
        return values.max(axis=0)
    mu = mu.reshape((-1,) + (1,) * (values.ndim - 1))
    return (mu * values ** p).sum(axis=0) ** (1. / p)


def is_exact(p, q):
    """True when weighted_norm is exact for nonnegative matrices"""
    return (p == 1 or q == INF or p == INF or q == 1 or
            (p == 2 and q == 2) or p >= q)


def weighted_norm(B, p, q, mu, tol=const.NORM_TOL,
                  max_iter=const.NORM_MAX_ITER, starts=const.NORM_STARTS):
    """Operator norm of B from L_p(mu) to L_q(mu)

    .. versionadded:: 0.1

    Closed forms cover p = 1, q = inf, and for nonnegative B also
    p = inf, q = 1 and p = q = 2. Other pairs run a nonlinear power
    iteration over nonnegative unit vectors from *starts* deterministic
    starting points; it reaches the global maximum when p >= q and gives a
    lower bound otherwise.

    :raises hlk.NumericFailure: when the iteration does not settle, with the
                                best lower bound in ``data``
    """
    B = np.asarray(B, dtype=float)
    mu = np.asarray(mu, dtype=float)
    for exponent in (p, q):
        if not 1 <= exponent <= INF:
            raise hlk.InvalidArgument('Exponents must lie in [1, inf], got '
                                      '{}'.format(exponent))
    if p == 1:
        return float((_lp(B, q, mu) / mu).max())
    if q == INF:
        return float(_lp((np.abs(B) / mu).T, conjugate_exponent(p),
                         mu).max())
    if np.any(B < 0):
        raise hlk.InvalidArgument('Iterative norm needs a nonnegative '
                                  'matrix')
    if p == INF:
        return float(_lp(B.sum(axis=1), q, mu))
    if q == 1:
        return float(_lp(mu.dot(B) / mu, conjugate_exponent(p), mu))
    scaled = (mu ** (1. / q))[:, np.newaxis] * B * mu ** (-1. / p)
    if p == 2 and q == 2:
        return float(linalg.svdvals(scaled)[0])
    return _power_norm(scaled, p, q, tol, max_iter, starts)


def _power_norm(C, p, q, tol, max_iter, starts):
    rng = np.random.default_rng(0)
    X = rng.uniform(0.01, 1., (C.shape[1], starts))
    X[:, 0] = 1.
    X /= _lp(X, p, np.ones(C.shape[1]))
    ones = np.ones(C.shape[0])
    values = _lp(C.dot(X), q, ones)
    dual = 1. / (p - 1.)
    for iteration in range(1, max_iter + 1):
        image = C.T.dot(C.dot(X) ** (q - 1.)) ** dual
        norms = _lp(image, p, np.ones(C.shape[1]))
        norms[norms == 0] = 1.
        X = image / norms
        updated = _lp(C.dot(X), q, ones)
        change = np.abs(updated - values) / np.maximum(updated, 1e-300)
        values = updated
        if change.max() <= tol:
            best = int(np.argmax(values))
            log.debug('Norm {}->{} converged in {} steps'.format(
                p, q, iteration))
            return float(values[best])
    raise hlk.NumericFailure(
        'Norm iteration {}->{} did not converge in {} steps'.format(
            p, q, max_iter),
        data={'lower_bound': float(values.max()),
              'residual': float(change.max())})


def random_case(rng):
    """Random InterpolationCase whose end pairs have exact norms"""
    exponents = const.EXPONENTS
    while True:
        p0, q0, p1, q1 = (exponents[index]
                          for index in rng.integers(0, len(exponents), 4))
        if is_exact(p0, q0) and is_exact(p1, q1):
            break
    theta = float(rng.uniform(0.05, 0.95))
    t = float(math.exp(rng.uniform(math.log(0.1), math.log(5.))))
    return InterpolationCase(p0, q0, p1, q1, theta, t)


def interpolation_ratio(S, case):
    """lhs / rhs of the interpolation inequality for one semigroup"""
    theta = case.theta
    try:
        lhs = weighted_norm(semigroup_at(S, theta, case.t), case.p_theta,
                            case.q_theta, S.mu)
    except hlk.NumericFailure as exc:
        lhs = exc.data['lower_bound']
        log.warning('Using lower bound {} for the interpolated norm'.format(
            lhs))
    start = weighted_norm(semigroup_at(S, 0., case.t), case.p0, case.q0,
                          S.mu)
    end = weighted_norm(semigroup_at(S, 1., case.t), case.p1, case.q1, S.mu)
    return lhs / (start ** (1. - theta) * end ** theta)


def log_convexity_ratio(S, case, thetas=(0.25, 0.5, 0.75)):
    """f(mid) / sqrt(f(low) f(high)) for f(theta) = ||T_{theta V}||

    None unless both end pairs satisfy p >= q, the range where every
    interior pair is computed exactly.
    """
    if not (case.p0 >= case.q0 and case.p1 >= case.q1):
        return None
    values = []
    for theta in thetas:
        p, q = case.at(theta)
        values.append(weighted_norm(semigroup_at(S, theta, case.t), p, q,
                                    S.mu))
    low, mid, high = values
    return mid / math.sqrt(low * high)


def _signed_potential(rng, n):
    return rng.uniform(-1., 2., n)


def check_interpolation(seed, trials, case=None, jobs=None,
                        tolerances=None, prefix='oracle'):
    """Interpolation inequality and log-convexity over random semigroups

    .. versionadded:: 0.1

    Without *case* every trial draws its own exponents, theta and t. The
    log-convexity check is returned only when some trial has both end
    pairs with p >= q.
    """
    started = time.perf_counter()

    def run(trial):
        rng = trial_rng(seed, trial)
        S = random_semigroup(rng, trial_states(trial),
                             potential_range=lambda rng, kappa:
                             _signed_potential(rng, len(kappa)))
        current = case or random_case(rng)
        return (current, interpolation_ratio(S, current),
                log_convexity_ratio(S, current))

    results = hlk.map_ordered(run, range(trials), jobs)
    threshold = 1. + _tolerance('oracle', tolerances)
    tracker = report.RatioTracker()
    convexity = report.RatioTracker()
    for trial, (current, ratio, convex) in enumerate(results):
        coords = dict(current._asdict(), trial=trial)
        tracker.update(ratio, **coords)
        if convex is not None:
            convexity.update(convex, **coords)
    params = {'seed': seed, 'trials': trials,
              'case': None if case is None else list(case)}
    checks = [report.new_check(prefix + '_interpolation', params, tracker,
                               threshold, started)]
    if convexity.n_points:
        checks.append(report.new_check(prefix + '_log_convexity', params,
                                       convexity, threshold, started))
    else:
        log.info('{}: no exact exponent pair, log-convexity not '
                 'checked'.format(prefix))
    return checks


def _tolerance(name, tolerances):
    return float((tolerances or {}).get(name, const.TOLERANCES[name]))


def _t_grid(T_max, low, high, count):
    return np.logspace(math.log10(T_max * low), math.log10(T_max * high),
                       count)


def pert_ultracon_ratio(S, p, nu, T_max=1.):
    """Worst ratio of ||T_V(t)||_{1->inf} t^nu to c_tilde on (0, T_max]

    c := sup t^nu ||T(t)||_{1->inf} and M (clamped >= 1) are measured on a
    log grid from 1e-4 T_max to 1e2 T_max; c_tilde = 3^{nu p'} c M^{2p'}.
    Returns (ratio, t, c, M).
    """
    if not p > 1:
        raise hlk.InvalidArgument('p must exceed 1, got {}'.format(p))
    mu = S.mu
    c = 0.
    M = 1.
    for t in _t_grid(T_max, 1e-4, 1e2, 61):
        c = max(c, t ** nu * weighted_norm(semigroup_at(S, 0., t), 1, INF,
                                           mu))
        perturbed = semigroup_at(S, 1., t)
        M = max(M, weighted_norm(semigroup_at(S, p, t), 2, 2, mu),
                weighted_norm(perturbed, 1, 1, mu),
                weighted_norm(perturbed, INF, INF, mu))
    dual = conjugate_exponent(p)
    c_tilde = 3. ** (nu * dual) * c * M ** (2. * dual)
    worst = (0., 0.)
    for t in _t_grid(T_max, 1e-4, 1., 41):
        ratio = (t ** nu * weighted_norm(semigroup_at(S, 1., t), 1, INF, mu)
                 / c_tilde)
        worst = max(worst, (ratio, float(t)))
    return worst[0], worst[1], c, M


def _ultracon_potential(p):
    def draw(rng, kappa):
        return rng.uniform(-kappa / p, 2.)
    return draw


def check_pert_ultracon_constant(seed, trials, p=2., T_max=1., jobs=None,
                                 tolerances=None):
    """Extrapolated ultracontractivity constant 3^{nu p'} c M^{2p'}

    .. versionadded:: 0.1

    nu is drawn per trial from 0.5, 1 and 2. V >= -kappa/p keeps T_{pV}
    contractive.
    """
    started = time.perf_counter()

    def run(trial):
        rng = trial_rng(seed, trial)
        S = random_semigroup(rng, trial_states(trial),
                             potential_range=_ultracon_potential(p))
        nu = float(rng.choice([0.5, 1., 2.]))
        return (nu,) + pert_ultracon_ratio(S, p, nu, T_max)

    tracker = report.RatioTracker()
    for trial, (nu, ratio, t, c, M) in enumerate(
            hlk.map_ordered(run, range(trials), jobs)):
        tracker.update(ratio, trial=trial, nu=nu, t=t, c=c, M=M)
    params = {'seed': seed, 'trials': trials, 'p': p, 'T_max': T_max}
    return report.new_check('oracle_pert_ultracon', params, tracker,
                            1. + _tolerance('oracle', tolerances), started)


def adversarial_pert_ultracon(seed, restarts, p=2., T_max=1., steps=10,
                              jobs=None):
    """Random-restart search for the largest extrapolation ratio

    .. versionadded:: 0.1

    Every restart draws a semigroup and then tries *steps* multiplicative
    perturbations of its rates, keeping improvements. Returns
    (max_ratio, witness).
    """
    def run(restart):
        rng = trial_rng(seed, restart)
        S = random_semigroup(rng, trial_states(restart),
                             potential_range=_ultracon_potential(p))
        nu = float(rng.choice([0.5, 1., 2.]))
        best = pert_ultracon_ratio(S, p, nu, T_max)[0]
        rates = S.mu[:, np.newaxis] * S.A
        np.fill_diagonal(rates, 0.)
        for _ in range(steps):
            candidate = rates * np.exp(rng.normal(0., 0.5, rates.shape))
            candidate = (candidate + candidate.T) / 2.
            trial = new_semigroup(S.mu, candidate, S.kappa, S.V)
            ratio = pert_ultracon_ratio(trial, p, nu, T_max)[0]
            if ratio > best:
                best, rates = ratio, candidate
        return best, nu

    tracker = report.RatioTracker()
    for restart, (ratio, nu) in enumerate(
            hlk.map_ordered(run, range(restarts), jobs)):
        tracker.update(ratio, restart=restart, nu=nu)
    log.info('Adversarial extrapolation ratio {:.6e} over {} restarts'.format(
        tracker.max_ratio, restarts))
    return tracker.max_ratio, tracker.witness


def _relative_gap(reference, other):
    return float(np.abs(other - reference).max() / np.abs(reference).max())


def check_additivity(seed, trials, t_values=(0.1, 1., 10.), jobs=None,
                     tolerances=None):
    """(T_V)_W = T_{V+W} = (T_W)_V and domination V >= W => T_V <= T_W

    .. versionadded:: 0.1

    Returns two checks: additivity (ratio 1 + relative sup gap) and
    domination (ratio 1 + max positive excess over max T_W).
    """
    started = time.perf_counter()

    def run(trial):
        rng = trial_rng(seed, trial)
        S = random_semigroup(rng, trial_states(trial))
        W = rng.uniform(0., 2., S.n)
        summed = with_potential(S, S.V + W)
        gaps = []
        excesses = []
        for t in t_values:
            reference = semigroup_at(summed, 1., t)
            composed = semigroup_at(absorbed(S, W), 1., t)
            commuted = semigroup_at(absorbed(with_potential(S, W), S.V), 1.,
                                    t)
            gaps.append(1. + max(_relative_gap(reference, composed),
                                 _relative_gap(reference, commuted)))
            weaker = semigroup_at(S, 1., t)
            excess = max(0., float((reference - weaker).max()))
            excesses.append(1. + excess / float(weaker.max()))
        return gaps, excesses

    additivity = report.RatioTracker()
    domination = report.RatioTracker()
    times = np.asarray(t_values, dtype=float)
    for trial, (gaps, excesses) in enumerate(
            hlk.map_ordered(run, range(trials), jobs)):
        additivity.update(gaps, trial=trial, t=times)
        domination.update(excesses, trial=trial, t=times)
    params = {'seed': seed, 'trials': trials, 't_values': list(t_values)}
    return [
        report.new_check('oracle_additivity', params, additivity,
                         1. + _tolerance('oracle_exact', tolerances),
                         started),
        report.new_check('oracle_domination', params, domination,
                         1. + _tolerance('domination', tolerances), started),
    ]


def miyadera_alpha(S, lam):
    """||V (lam - A)^{-1}||_{1->1} on L1(mu)"""
    if not lam > 0:
        raise hlk.InvalidArgument('lambda must exceed the growth bound 0, '
                                  'got {}'.format(lam))
    resolvent = linalg.solve(lam * np.eye(S.n) - S.A, np.eye(S.n))
    return weighted_norm(np.abs(S.V)[:, np.newaxis] * resolvent, 1, 1,
                         S.mu)


def miyadera_ratio(S, lam, t_values=None):
    """Worst ||T_V(t)||_{1->1} (1 - alpha) e^{-lam t}; (ratio, t, alpha)

    Returns None when alpha >= 1.
    """
    alpha = miyadera_alpha(S, lam)
    if not alpha < 1:
        return None
    if t_values is None:
        t_values = np.logspace(-3., 1., 41)
    worst = (0., 0.)
    for t in t_values:
        ratio = (weighted_norm(semigroup_at(S, 1., t), 1, 1, S.mu) *
                 (1. - alpha) * math.exp(-lam * t))
        worst = max(worst, (ratio, float(t)))
    return worst[0], worst[1], alpha


def check_miyadera_discrete(seed, trials, lam=None, jobs=None,
                            tolerances=None):
    """||T_V(t)||_{1->1} <= e^{lam t} / (1 - alpha) with M = 1, omega = 0

    .. versionadded:: 0.1

    Without *lam* each trial draws lambda in [0.5, 5] and a signed V of
    size below 0.9 lambda. Trials with alpha >= 1 are skipped and counted.
    """
    started = time.perf_counter()

    def run(trial):
        rng = trial_rng(seed, trial)
        current = lam or float(rng.uniform(0.5, 5.))
        S = random_semigroup(rng, trial_states(trial),
                             potential_range=(-0.9 * current,
                                              0.9 * current))
        return current, miyadera_ratio(S, current)

    tracker = report.RatioTracker()
    skipped = 0
    for trial, (current, result) in enumerate(
            hlk.map_ordered(run, range(trials), jobs)):
        if result is None:
            skipped += 1
            log.warning('Trial {} skipped: alpha >= 1 at lambda {}'.format(
                trial, current))
            continue
        ratio, t, alpha = result
        tracker.update(ratio, trial=trial, lam=current, t=t, alpha=alpha)
    params = {'seed': seed, 'trials': trials, 'lambda': lam,
              'skipped': skipped}
    return report.new_check('oracle_miyadera', params, tracker,
                            1. + _tolerance('oracle', tolerances), started)
