# -*- coding: utf-8 -*-


"""Named verification suites

Each suite takes a validated context and returns a VerificationReport.
Solver kernels are shared between the checks of one run through a dict
cache.
"""


import logging
import math

import numpy as np

import hlk
from hlk import config
from hlk import const
from hlk import oracle
from hlk import potential
from hlk import report
from hlk import verify


log = logging.getLogger('hlk-suites')

STOCHASTICITY_T_VALUES = [0.01, 0.1, 1., 10.]
STOCHASTICITY_Y_VALUES = [0.1, 1., 5.]
# Two unit-distance balls three apart
DAVIES_GAFFNEY_FIXTURE = {'x': 2., 'y': 6., 'r': 3., 'eps': 0.5,
                          't_values': [0.25, 1., 4.]}
FIXED_INTERPOLATION_CASE = oracle.InterpolationCase(
    1., float('inf'), 2., 2., 0.5, 1.)
L1_BOUNDARY_T_VALUES = [0.1, 1., 5.]
L1_EXPONENTIAL_T_VALUES = [0.1, 1.]


def builtin_potentials():
    return [potential.well(0.4, 1., 2.), potential.exp_decay(0.5),
            potential.signed(0.3, 0.5, 2.)]


class SuiteRun(object):
    """State shared by the suites of one invocation"""

    def __init__(self, ctx):
        self.ctx = ctx
        self.digest = config.digest(ctx)
        self.V = potential.from_spec(ctx['potential'])
        self.cfg = config.solver_config(ctx)
        self.mc = config.mc_config(ctx)
        self.jobs = config.jobs(ctx)
        self.cache = {}

    @property
    def solver_kwargs(self):
        return {'N': self.ctx['N'], 'cfg': self.cfg, 'jobs': self.jobs,
                'cache': self.cache,
                'tolerances': self.ctx['tolerances']}

    def new_report(self, suite, checks, constants=None, tables=None):
        return report.new_report(suite, self.digest, checks, constants,
                                 tables)


def closed_form_suite(run):
    ctx = run.ctx
    tolerances = ctx['tolerances']
    checks = [
        verify.check_sandwich(ctx['t_values'], ctx['N'],
                              tolerances=tolerances),
        verify.check_stochasticity(STOCHASTICITY_T_VALUES,
                                   STOCHASTICITY_Y_VALUES,
                                   tolerances=tolerances),
        verify.check_weighted_ultracontractivity(ctx['t_values'], ctx['N'],
                                                 tolerances=tolerances),
        verify.check_green_laplace(ctx['lambda_values'],
                                   tolerances=tolerances),
    ]
    return run.new_report(const.SUITE_CLOSED_FORM, checks)


def potential_suite(run):
    potentials = builtin_potentials()
    if run.V.family != 'zero':
        potentials.append(run.V)
    tolerances = run.ctx['tolerances']
    checks = [
        verify.check_miyadera(potentials, tolerances=tolerances),
        verify.check_miyadera_m_weighted(potentials, tolerances=tolerances),
        verify.check_form_smallness(potentials, tolerances=tolerances),
    ]
    constants = dict(
        ('alpha_{}'.format(index), V.alpha_closed_form)
        for index, V in enumerate(potentials))
    return run.new_report(const.SUITE_POTENTIAL, checks, constants)


def cross_method_suite(run):
    t_values = run.ctx['cross_t_values']
    kwargs = run.solver_kwargs
    checks = verify.check_cross_method(run.V, t_values, **kwargs)
    checks.append(verify.check_monte_carlo(
        run.V, t_values, mc=run.mc, N=kwargs['N'], cfg=run.cfg,
        jobs=run.jobs, cache=run.cache))
    checks.append(verify.check_free_survival(t_values, mc=run.mc,
                                             jobs=run.jobs))
    for method in const.SOLVER_METHODS:
        checks.append(verify.check_positivity(run.V, t_values, method,
                                              **kwargs))
    checks.append(verify.check_symmetry(run.V, t_values,
                                        const.METHOD_CRANK_NICOLSON,
                                        **kwargs))
    return run.new_report(const.SUITE_CROSS_METHOD, checks)


def _domination_pair(V, grid):
    """(upper potential, lower potential) with a nontrivial order"""
    samples = potential.sample(V, grid)
    if np.all(samples <= 0):
        return potential.zero(), V
    if np.all(samples >= 0):
        return V, potential.zero()
    return V, potential.negative_part(V)


def main_suite(run):
    ctx = run.ctx
    V = run.V
    t_values = ctx['t_values']
    method = ctx['method']
    kwargs = run.solver_kwargs
    constants = {}
    checks = []

    c_main, witness = verify.empirical_constant(
        V, t_values, 'main', method=method, N=kwargs['N'], cfg=run.cfg,
        jobs=run.jobs, cache=run.cache)
    constants['c_emp_main'] = c_main
    constants['c_emp_main_witness'] = witness
    constants['c_emp_boundary_sharp'] = verify.empirical_constant(
        V, t_values, 'boundary_sharp', method=method, N=kwargs['N'],
        cfg=run.cfg, jobs=run.jobs, cache=run.cache)[0]
    if V.family == 'zero':
        tracker = report.RatioTracker()
        tracker.update(c_main * math.sqrt(4. * math.pi), **witness)
        checks.append(report.new_check(
            'main_bound_free', {'t_values': t_values, 'N': kwargs['N']},
            tracker, 1. + verify.tolerance('solver', ctx['tolerances'])))

    checks.append(verify.check_positivity(V, t_values, method, **kwargs))
    checks.append(verify.check_exponential_bound(
        V, t_values, xi_values=ctx['xi_values'], method=method, **kwargs))
    checks.append(verify.check_boundary_bound(V, t_values, method=method,
                                              **kwargs))
    constants['c_exponential'] = checks[-2]['params']['c']
    constants['C_boundary'] = checks[-1]['params']['C']

    upper, lower = _domination_pair(V, verify.grid_for(V, t_values[0],
                                                       kwargs['N']))
    checks.append(verify.check_domination(upper, lower, t_values, method,
                                          **kwargs))

    fixture = DAVIES_GAFFNEY_FIXTURE
    checks.append(verify.check_davies_gaffney(
        V, fixture['x'], fixture['y'], fixture['r'], fixture['eps'],
        fixture['t_values'], method, **kwargs))

    alpha = potential.alpha_of(V, verify.grid_for(V, max(t_values),
                                                  kwargs['N']))
    constants['alpha'] = alpha
    if alpha < 1:
        checks.append(verify.check_L1_exponential(
            V, ctx['xi_values'], L1_EXPONENTIAL_T_VALUES, method, **kwargs))
        checks.append(verify.check_L1_boundary_weighted(
            V, L1_BOUNDARY_T_VALUES, method, **kwargs))
        checks.append(verify.check_mass_bound(V, t_values, method,
                                              **kwargs))
    else:
        log.warning('alpha = {:.6g} >= 1, weighted L1 checks skipped'.format(
            alpha))
    return run.new_report(const.SUITE_MAIN, checks, constants)


def counterexample_suite(run):
    ctx = run.ctx
    xi = ctx['xi']
    rows = verify.counterexample_demo(xi, ctx['demo_t_values'],
                                      ctx['L_values'])
    constants = verify.growth_factors(rows)
    nonpositive = sorted(set([-abs(xi), 0.]))
    checks = [verify.check_counterexample_nonpositive(
        nonpositive, ctx['demo_t_values'], ctx['L_values'],
        tolerances=ctx['tolerances'])]
    return run.new_report(const.SUITE_COUNTEREXAMPLE, checks, constants,
                          {'counterexample': rows})


def oracle_suite(run):
    ctx = run.ctx
    seed, trials = ctx['seed'], ctx['trials']
    if not trials:
        log.info('No oracle trials requested')
        return run.new_report(const.SUITE_ORACLE, [])
    tolerances = ctx['tolerances']
    checks = []
    checks.extend(oracle.check_interpolation(seed, trials, jobs=run.jobs,
                                             tolerances=tolerances))
    checks.extend(oracle.check_interpolation(
        seed, trials, FIXED_INTERPOLATION_CASE, jobs=run.jobs,
        tolerances=tolerances, prefix='oracle_fixed'))
    checks.append(oracle.check_pert_ultracon_constant(
        seed, trials, jobs=run.jobs, tolerances=tolerances))
    checks.extend(oracle.check_additivity(seed, trials, jobs=run.jobs,
                                          tolerances=tolerances))
    checks.append(oracle.check_miyadera_discrete(seed, trials,
                                                 jobs=run.jobs,
                                                 tolerances=tolerances))
    constants = {}
    if ctx['restarts']:
        constants['pert_ultracon_adversarial_ratio'] = (
            oracle.adversarial_pert_ultracon(seed, ctx['restarts'],
                                             jobs=run.jobs)[0])
    return run.new_report(const.SUITE_ORACLE, checks, constants)


def solve_report(run):
    """Agreement and positivity of every solver for one potential and t"""
    t_values = [run.ctx['t']]
    kwargs = run.solver_kwargs
    checks = verify.check_cross_method(run.V, t_values, **kwargs)
    for method in const.SOLVER_METHODS:
        checks.append(verify.check_positivity(run.V, t_values, method,
                                              **kwargs))
    return run.new_report('solve', checks)


SUITES = {
    const.SUITE_CLOSED_FORM: closed_form_suite,
    const.SUITE_POTENTIAL: potential_suite,
    const.SUITE_CROSS_METHOD: cross_method_suite,
    const.SUITE_MAIN: main_suite,
    const.SUITE_COUNTEREXAMPLE: counterexample_suite,
    const.SUITE_ORACLE: oracle_suite,
}


def run_suite(ctx):
    """Run the suite named in a validated context

    .. versionadded:: 0.1

    ``all`` runs every suite and merges the reports.
    """
    run = SuiteRun(ctx)
    name = ctx['suite']
    if name == const.SUITE_ALL:
        reports = [SUITES[suite](run) for suite in const.SUITES
                   if suite != const.SUITE_ALL]
        return report.merge_reports(name, run.digest, reports)
    if name not in SUITES:
        raise hlk.ConfigError('Unknown suite {!r}'.format(name))
    log.info('Running suite {}'.format(name))
    return SUITES[name](run)


def exit_code(suite, verification):
    """0 when every check passes or the suite is a demo, else 1"""
    if suite in const.DEMO_SUITES or report.passed(verification):
        return const.EXIT_PASS
    return const.EXIT_FAILURE
