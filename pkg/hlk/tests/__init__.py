# -*- coding: utf-8 -*-


"""Shared fixtures: small grids and fast solver settings"""


import json
import os
import sys
import tempfile

import mock

from hlk import const
from hlk import engine
from hlk import grid
from hlk import report


FAST_SOLVER = engine.SolverConfig(series_depth=50, series_tol=1e-10,
                                  dt=1e-3, time_quadrature_nodes=32)
FAST_MC = engine.MCConfig(paths=4000, dt=1e-3, seed=11, antithetic=True,
                          block=1000)
MISSING_CONFIG_FILE = '/nonexistent/hlk-test.json'


def small_grid(L=6., N=60):
    return grid.make_grid(L, N)


def temp_json(data):
    """Write *data* to a temporary JSON file, return its path"""
    handle, path = tempfile.mkstemp(suffix='.json')
    with os.fdopen(handle, 'w') as stream:
        json.dump(data, stream)
    return path


def temp_path(suffix=''):
    handle, path = tempfile.mkstemp(suffix=suffix)
    os.close(handle)
    return path


def fake_report(passed=True, suite='main'):
    tracker = report.RatioTracker()
    tracker.update(0.5 if passed else 2., t=1.)
    check = report.new_check('fake_check', {}, tracker, 1.)
    return report.new_report(suite, 'digest', [check])


def run_cli(main, *argv):
    """Run *main* with argv and no user configuration file"""
    with mock.patch.object(const, 'DEFAULT_CONFIG_FILE',
                           MISSING_CONFIG_FILE):
        with mock.patch.object(sys, 'argv', ['hlk'] + list(argv)):
            return main()
