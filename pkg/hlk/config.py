# -*- coding: utf-8 -*-


"""Run configuration

A configuration is one flat dict. Files are JSON objects holding any subset
of :data:`DEFAULT_CONFIG`; command line flags override file values.
"""


import codecs
import hashlib
import itertools
import json
import logging
import numbers
import os

import hlk
from hlk import const
from hlk import engine
from hlk import potential


DEFAULT_CONFIG = {
    'suite': const.SUITE_CLOSED_FORM,
    'potential': 'zero',
    'L': 'auto',
    'N': const.DEFAULT_N,
    'method': const.METHOD_DUHAMEL,

    'series_depth': 50,
    'series_tol': 1e-10,
    'dt': 1e-3,
    'time_nodes': 64,

    'mc_paths': 20000,
    'mc_dt': 1e-3,
    'mc_block': 4096,
    'antithetic': True,
    'seed': 0,

    't': 1.,
    't_values': const.DEFAULT_T_VALUES,
    'xi': 1.,
    'xi_values': const.DEFAULT_XI_VALUES,
    'lambda_values': const.DEFAULT_LAMBDA_VALUES,
    'L_values': [10., 20., 40., 80.],
    'demo_t_values': [1., 4., 16.],
    'cross_t_values': [0.1, 0.5, 1.],
    'truncation_levels': [1., 2., 4., 8., 16.],
    'trials': 100,
    'restarts': 1000,
    'tolerances': {},

    'output': None,
    'binary': None,
    'jobs': None,
}
# Keys that never change a result
UNHASHED_KEYS = ['output', 'binary', 'jobs']
log = logging.getLogger('hlk-config')


def new_context(config=None):
    """Read configuration from *config* dict.

    .. versionadded:: 0.1

    :param config: Dict containing custom configuration

    Example:

    >>> from hlk import config
    >>> config.new_context({'N': 800})['N']
    800
    """
    if config is None:
        log.debug('Loading default configuration')
        config = DEFAULT_CONFIG
    else:
        log.debug('Loading custom configuration')

    return dict(
        (key, value)
        for key, value in itertools.chain(DEFAULT_CONFIG.items(),
                                          config.items())
    )


def new_context_from_file(config_filename=None, encoding='utf-8'):
    """Open and read *config_filename* and parse configuration from it.

    .. versionadded:: 0.1

    :param config_filename: JSON configuration filename
    :param encoding: Encoding of configuration file

    Returns the merged context, or None when the file does not exist.
    """
    if config_filename is None:
        config_filename = const.DEFAULT_CONFIG_FILE
    config_filename = os.path.abspath(
        os.path.expanduser(os.path.expandvars(config_filename)))
    if not os.path.isfile(config_filename):
        log.error('Configuration file \'{}\' not found.'.format(
            config_filename))
        return None
    log.debug('Reading configuration file \'{}\''.format(config_filename))

    with codecs.open(config_filename, 'r', encoding) as config_file:
        try:
            config = json.load(config_file)
        except ValueError as exc:
            raise hlk.ConfigError('Invalid JSON in \'{}\': {}'.format(
                config_filename, exc))
    if not isinstance(config, dict):
        raise hlk.ConfigError('Configuration file \'{}\' must hold a JSON '
                              'object'.format(config_filename))
    return new_context(config)


def _number(config, key, positive=False, integer=False, allow_none=False):
    value = config[key]
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise hlk.ConfigError('{} must be a number, got {!r}'.format(key,
                                                                     value))
    if integer and int(value) != value:
        raise hlk.ConfigError('{} must be an integer, got {!r}'.format(
            key, value))
    if positive and not value > 0:
        raise hlk.ConfigError('{} must be positive, got {!r}'.format(key,
                                                                     value))
    return int(value) if integer else float(value)


def _numbers(config, key, positive=False):
    values = config[key]
    if not isinstance(values, (list, tuple)) or not values:
        raise hlk.ConfigError('{} must be a non-empty list, got {!r}'.format(
            key, values))
    return [_number({key: value}, key, positive=positive)
            for value in values]


def validate(config):
    """Check types and ranges of a context, return a normalized copy

    .. versionadded:: 0.1

    :raises hlk.ConfigError: on the first invalid key
    """
    unknown = sorted(set(config) - set(DEFAULT_CONFIG))
    if unknown:
        raise hlk.ConfigError('Unknown configuration keys: {}'.format(
            ', '.join(unknown)))
    config = new_context(config)
    checked = dict(config)
    if config['suite'] not in const.SUITES:
        raise hlk.ConfigError('Unknown suite {!r}, expected one of {}'.format(
            config['suite'], ', '.join(const.SUITES)))
    methods = const.SOLVER_METHODS + [const.METHOD_CLOSED_FORM]
    if config['method'] not in methods:
        raise hlk.ConfigError('Unknown method {!r}'.format(config['method']))
    try:
        potential.from_spec(config['potential'])
    except hlk.InvalidArgument as exc:
        raise hlk.ConfigError('Invalid potential: {}'.format(exc))
    if config['L'] != 'auto':
        checked['L'] = _number(config, 'L', positive=True)
    for key in ('N', 'series_depth', 'time_nodes', 'mc_paths', 'mc_block'):
        checked[key] = _number(config, key, positive=True, integer=True)
    for key in ('N', 'time_nodes'):
        if checked[key] < 2:
            raise hlk.ConfigError('{} must be at least 2'.format(key))
    for key in ('trials', 'restarts', 'seed'):
        checked[key] = _number(config, key, integer=True)
        if checked[key] < 0:
            raise hlk.ConfigError('{} must be nonnegative'.format(key))
    for key in ('series_tol', 'dt', 'mc_dt', 't'):
        checked[key] = _number(config, key, positive=True)
    checked['xi'] = _number(config, 'xi')
    checked['jobs'] = _number(config, 'jobs', positive=True, integer=True,
                              allow_none=True)
    for key in ('t_values', 'lambda_values', 'L_values', 'demo_t_values',
                'cross_t_values', 'truncation_levels'):
        checked[key] = _numbers(config, key, positive=True)
    checked['xi_values'] = _numbers(config, 'xi_values')
    if not isinstance(config['antithetic'], bool):
        raise hlk.ConfigError('antithetic must be true or false')
    tolerances = config['tolerances']
    if not isinstance(tolerances, dict):
        raise hlk.ConfigError('tolerances must be an object')
    for name in tolerances:
        if name not in const.TOLERANCES:
            raise hlk.ConfigError('Unknown tolerance {!r}'.format(name))
        _number(tolerances, name, positive=True)
    for key in ('output', 'binary'):
        if config[key] is not None and not isinstance(config[key], str):
            raise hlk.ConfigError('{} must be a path'.format(key))
    return checked


def digest(config):
    """SHA-256 of the canonical serialization, output paths excluded

    >>> from hlk import config
    >>> ctx = config.validate(config.new_context())
    >>> config.digest(ctx) == config.digest(dict(ctx, jobs=4))
    True
    """
    hashed = dict((key, value) for key, value in config.items()
                  if key not in UNHASHED_KEYS)
    canonical = json.dumps(hashed, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def solver_config(config):
    return engine.solver_config(config['series_depth'],
                                config['series_tol'], config['dt'],
                                config['time_nodes'])


def mc_config(config):
    return engine.mc_config(config['mc_paths'], config['mc_dt'],
                            config['seed'], config['antithetic'],
                            config['mc_block'])


def jobs(config):
    """Worker count: config value, else HLK_JOBS"""
    if config.get('jobs') is not None:
        return config['jobs']
    return hlk.default_jobs()
