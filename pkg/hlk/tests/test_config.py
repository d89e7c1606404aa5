# -*- coding: utf-8 -*-


"""Test config module"""


import os
import unittest

import mock

import hlk
from hlk import config
from hlk import const
from hlk import engine
from hlk import tests


class ConfigTest(unittest.TestCase):
    def setUp(self):
        self.paths = []

    def tearDown(self):
        for path in self.paths:
            os.remove(path)

    def temp_json(self, data):
        path = tests.temp_json(data)
        self.paths.append(path)
        return path

    def test_default_config(self):
        ctx = config.new_context()
        assert ctx == config.DEFAULT_CONFIG
        assert ctx is not config.DEFAULT_CONFIG
        assert ctx['restarts'] == 1000

    def test_custom_config(self):
        ctx = config.new_context({'N': 800})
        assert ctx['N'] == 800
        assert ctx['suite'] == const.SUITE_CLOSED_FORM

    def test_missing_file(self):
        assert config.new_context_from_file(tests.MISSING_CONFIG_FILE) is None

    def test_config_file(self):
        ctx = config.new_context_from_file(self.temp_json({'N': 50,
                                                           'seed': 3}))
        assert ctx['N'] == 50 and ctx['seed'] == 3
        assert ctx['method'] == const.METHOD_DUHAMEL

    def test_invalid_json(self):
        path = tests.temp_path('.json')
        self.paths.append(path)
        with open(path, 'w') as stream:
            stream.write('{"N": ')
        self.assertRaises(hlk.ConfigError, config.new_context_from_file,
                          path)

    def test_example_file(self):
        path = os.path.join(os.path.dirname(hlk.__file__), os.pardir,
                            'config-example.json')
        ctx = config.validate(config.new_context_from_file(path))
        for key, value in config.DEFAULT_CONFIG.items():
            if key != 'tolerances':
                assert ctx[key] == value
        assert ctx['tolerances'] == const.TOLERANCES

    def test_json_not_an_object(self):
        self.assertRaises(hlk.ConfigError, config.new_context_from_file,
                          self.temp_json([1, 2]))


class ValidateTest(unittest.TestCase):
    def test_defaults_are_valid(self):
        ctx = config.validate(config.new_context())
        assert ctx['N'] == const.DEFAULT_N
        assert ctx['L'] == 'auto'
        assert ctx['jobs'] is None

    def test_normalized_values(self):
        ctx = config.validate({'L': 20, 't_values': [1, 2], 'trials': 3.})
        assert ctx['L'] == 20. and isinstance(ctx['L'], float)
        assert ctx['t_values'] == [1., 2.]
        assert ctx['trials'] == 3 and isinstance(ctx['trials'], int)

    def test_potential_specs(self):
        config.validate({'potential': 'well:0.4:1:2'})
        config.validate({'potential': {'family': 'exp_decay', 's': 0.5}})

    def test_invalid_values(self):
        for overrides in ({'bogus': 1},
                          {'suite': 'nope'},
                          {'method': 'euler'},
                          {'potential': 'nope:1'},
                          {'potential': 'well:1:2'},
                          {'N': 1},
                          {'N': 2.5},
                          {'time_nodes': 1},
                          {'L': -1.},
                          {'trials': -1},
                          {'seed': True},
                          {'dt': 0.},
                          {'jobs': 0},
                          {'t_values': []},
                          {'xi_values': ['a']},
                          {'antithetic': 'yes'},
                          {'tolerances': []},
                          {'tolerances': {'nope': 1e-3}},
                          {'tolerances': {'solver': -1.}},
                          {'output': 3}):
            self.assertRaises(hlk.ConfigError, config.validate, overrides)

    def test_digest(self):
        ctx = config.validate(config.new_context())
        value = config.digest(ctx)
        assert len(value) == 64
        assert config.digest(dict(ctx)) == value
        assert config.digest(dict(ctx, output='report.json',
                                  binary='kernel.bin', jobs=4)) == value
        assert config.digest(dict(ctx, seed=1)) != value

    def test_solver_settings(self):
        ctx = config.validate(config.new_context())
        assert config.solver_config(ctx) == engine.SolverConfig()
        assert config.mc_config(ctx) == engine.MCConfig()


class JobsTest(unittest.TestCase):
    def test_config_value_wins(self):
        with mock.patch.dict(os.environ, {const.JOBS_ENV_VAR: '4'}):
            assert config.jobs({'jobs': 2}) == 2

    def test_environment(self):
        with mock.patch.dict(os.environ, {const.JOBS_ENV_VAR: '4'}):
            assert config.jobs({'jobs': None}) == 4
        with mock.patch.dict(os.environ, {const.JOBS_ENV_VAR: ''}):
            assert config.jobs({}) == 1

    def test_invalid_environment(self):
        for value in ('many', '0'):
            with mock.patch.dict(os.environ, {const.JOBS_ENV_VAR: value}):
                self.assertRaises(hlk.ConfigError, hlk.default_jobs)
