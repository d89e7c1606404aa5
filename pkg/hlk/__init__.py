# -*- coding: utf-8 -*-


"""Half-line Schrödinger kernels: errors and worker pool helpers"""


import concurrent.futures
import logging
import os

from hlk import const


log = logging.getLogger('hlk')


class InvalidArgument(ValueError):
    """Raised when an operation precondition is violated."""


class ConfigError(InvalidArgument):
    """Raised for malformed configuration files, specs or flags."""


class NumericFailure(RuntimeError):
    """Raised when an iterative or linear solver does not deliver.

    :param data: Dict describing the failure (last iterate, residual, best
                 lower bound...)
    """

    def __init__(self, message, data=None):
        super(NumericFailure, self).__init__(message)
        self.data = data or {}


class DivergenceError(NumericFailure):
    """Raised when a fixed point residual keeps growing."""

    def __init__(self, message, history=None, data=None):
        super(DivergenceError, self).__init__(message, data=data)
        self.history = list(history or [])


def default_jobs():
    """Return worker count from HLK_JOBS environment variable (1 if unset)

    .. versionadded:: 0.1
    """
    value = os.environ.get(const.JOBS_ENV_VAR)
    if value is None or value.strip() == '':
        return 1
    try:
        jobs = int(value)
    except ValueError:
        raise ConfigError('{} must be an integer, got {!r}'.format(
            const.JOBS_ENV_VAR, value))
    if jobs < 1:
        raise ConfigError('{} must be positive, got {}'.format(
            const.JOBS_ENV_VAR, jobs))
    return jobs


def map_ordered(func, items, jobs=None):
    """Apply *func* to each item and return results in input order

    .. versionadded:: 0.1

    :param func: Callable applied to every item
    :param items: Iterable of arguments
    :param jobs: Worker count, defaults to :func:`default_jobs`

    Results never depend on *jobs*: aggregation follows *items* order.

    >>> import hlk
    >>> hlk.map_ordered(abs, [-1, 2, -3], jobs=2)
    [1, 2, 3]
    """
    items = list(items)
    if jobs is None:
        jobs = default_jobs()
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    log.debug('Dispatching {} tasks on {} workers'.format(len(items), jobs))
    with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))
