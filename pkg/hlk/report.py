# -*- coding: utf-8 -*-


"""Inequality checks and verification reports

A check is a dict with a fixed key order (name, params, n_points,
max_ratio, threshold, pass, witness, runtime_ms); a report gathers checks
sorted by name with the empirical constants. Serialization is
deterministic apart from the runtime_ms fields.
"""


import copy
import json
import logging
import math
import time

import numpy as np


log = logging.getLogger('hlk-report')


class RatioTracker(object):
    """Keep the worst lhs/rhs ratio of a sweep and where it happened

    Only *mask* removes points. A NaN or infinite ratio counts as an
    unbounded ratio, so a check holding one fails.
    """

    def __init__(self):
        self.max_ratio = 0.
        self.witness = {}
        self.n_points = 0

    def update(self, ratios, mask=None, **coords):
        """Fold an array of ratios into the running maximum

        :param ratios: Array of lhs/rhs values
        :param mask: Optional boolean array, False entries are ignored
        :param coords: Arrays or scalars broadcastable to ratios, recorded
                       as witness at the arg max
        """
        ratios = np.asarray(ratios, dtype=float)
        valid = np.ones(ratios.shape, dtype=bool)
        if mask is not None:
            valid &= np.broadcast_to(mask, ratios.shape)
        count = int(valid.sum())
        if not count:
            return
        first = not self.n_points
        self.n_points += count
        scored = np.where(np.isnan(ratios), np.inf, ratios)
        scored = np.where(valid, scored, -np.inf)
        index = np.unravel_index(int(np.argmax(scored)), ratios.shape)
        value = float(scored[index])
        witness = dict(
            (key, float(np.broadcast_to(coord, ratios.shape)[index]))
            for key, coord in sorted(coords.items()))
        if value == float('inf'):
            log.warning('Unbounded ratio at {}'.format(witness))
        if first or value > self.max_ratio:
            self.max_ratio = value
            self.witness = witness


def sanitize(value):
    """Convert numpy values and tuples into plain JSON types"""
    if isinstance(value, dict):
        return dict((key, sanitize(item)) for key, item in value.items())
    if isinstance(value, (list, tuple)):
        return [sanitize(item) for item in value]
    if isinstance(value, np.ndarray):
        return sanitize(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def new_check(name, params, tracker, threshold, started=None):
    """Build an InequalityCheck dict

    .. versionadded:: 0.1

    :param name: Check name
    :param params: Dict describing the sweep
    :param tracker: RatioTracker holding max ratio and witness
    :param threshold: Pass bound, pass iff max_ratio <= threshold
    :param started: time.perf_counter() value at the start of the check

    A check that evaluated no point does not pass.
    """
    runtime = 0. if started is None else (time.perf_counter() - started)
    passed = bool(tracker.n_points and tracker.max_ratio <= threshold)
    if not tracker.n_points:
        log.warning('{} evaluated no point'.format(name))
    log.info('{:<40} max ratio {:.6e} threshold {:.6e} {}'.format(
        name, tracker.max_ratio, threshold, 'PASS' if passed else 'FAIL'))
    return {
        'name': name,
        'params': sanitize(params),
        'n_points': int(tracker.n_points),
        'max_ratio': float(tracker.max_ratio),
        'threshold': float(threshold),
        'pass': passed,
        'witness': sanitize(tracker.witness),
        'runtime_ms': 1000. * runtime,
    }


def new_report(suite, config_digest, checks, constants=None, tables=None):
    """Build a VerificationReport dict, checks ordered by name"""
    report = {
        'suite': suite,
        'config_digest': config_digest,
        'checks': sorted(checks, key=lambda check: check['name']),
        'constants': dict(
            (key, sanitize(value))
            for key, value in sorted((constants or {}).items())),
    }
    if tables:
        report['tables'] = sanitize(dict(sorted(tables.items())))
    return report


def merge_reports(suite, config_digest, reports):
    """Fold several reports into one"""
    checks = []
    constants = {}
    tables = {}
    for report in reports:
        checks.extend(report['checks'])
        constants.update(report['constants'])
        tables.update(report.get('tables', {}))
    return new_report(suite, config_digest, checks, constants, tables)


def passed(report):
    return all(check['pass'] for check in report['checks'])


def strip_runtimes(report):
    """Copy of *report* without runtime_ms fields"""
    stripped = copy.deepcopy(report)
    for check in stripped['checks']:
        check.pop('runtime_ms', None)
    return stripped


def to_json(report):
    return json.dumps(sanitize(report), indent=2, allow_nan=False) + '\n'
