#! /usr/bin/env python
# -*- coding: utf-8 -*-


"""Compute and verify half-line Schrödinger kernels

Usage:
    hlk kernel [options]
    hlk solve [options]
    hlk verify [options]
    hlk oracle [options]
    hlk demo [options]

Options:
    --V=<SPEC>                  Potential (`zero`, `well:s:a:b`, `exp_decay:s`,
                                `signed:s:a:b`, `power:s:beta:b`)
    --t=<T>                     Time for kernel, solve and demo
    --N=<N>                     Grid points
    --L=<L>                     Domain length, `auto` by default
    --xi=<XI>                   Weight parameter of the counterexample
    --suite=<SUITE>             closed-form, potential, cross-method, main,
                                counterexample, oracle or all
    --seed=<SEED>               Master seed of random streams
    --trials=<TRIALS>           Random oracle trials
    --method=<METHOD>           duhamel, crank_nicolson, lie_trotter or
                                closed_form
    --jobs=<JOBS>               Worker count (HLK_JOBS by default)
    -o, --output=<FILE>         Write report or CSV to FILE (stdout by default)
    -b, --binary=<FILE>         Also write the kernel in flat binary format
    -c, --config-file=<FILE>    JSON configuration file (`~/.config/hlk.json`
                                by default)
    -v, --verbose               Generate verbose messages
    -h, --help                  Show help options.
    --version                   Print program version.

Exit status: 0 all checks pass, 1 a check failed, 2 usage or configuration
error, 3 numeric failure, 4 input or output error.

----
hlk 0.1
License MIT
This is free software: you are free to change and redistribute it.
There is NO WARRANTY, to the extent permitted by law.
"""


import contextlib
import csv
import logging
import os
import sys

import docopt

import hlk
from hlk import config
from hlk import const
from hlk import engine
from hlk import grid as grid_quad
from hlk import kernel_io
from hlk import potential
from hlk import report
from hlk import suites
from hlk import verify


log = logging.getLogger('hlk')
VERBS = ['kernel', 'solve', 'verify', 'oracle', 'demo']
# flag: (config key, converter)
FLAGS = {
    '--V': ('potential', str),
    '--t': ('t', float),
    '--N': ('N', int),
    '--L': ('L', lambda value: value if value == 'auto' else float(value)),
    '--xi': ('xi', float),
    '--suite': ('suite', str),
    '--seed': ('seed', int),
    '--trials': ('trials', int),
    '--method': ('method', str),
    '--jobs': ('jobs', int),
    '--output': ('output', str),
    '--binary': ('binary', str),
}


def load_context(args):
    """Default context, config file and flags, flags winning

    Returns None when an explicit config file is missing.
    """
    config_file = args.get('--config-file')
    if config_file is not None:
        ctx = config.new_context_from_file(config_file)
        if ctx is None:
            return None
    elif os.path.isfile(os.path.expanduser(const.DEFAULT_CONFIG_FILE)):
        ctx = config.new_context_from_file()
    else:
        ctx = config.new_context()
    for flag, (key, convert) in sorted(FLAGS.items()):
        value = args.get(flag)
        if value is None:
            continue
        try:
            ctx[key] = convert(value)
        except ValueError:
            raise hlk.ConfigError('Invalid value {!r} for {}'.format(value,
                                                                    flag))
    return config.validate(ctx)


@contextlib.contextmanager
def open_output(path, mode='w'):
    """Yield an open file, or stdout when *path* is None"""
    if path is None:
        yield sys.stdout
        return
    with open(path, mode) as stream:
        yield stream


def kernel_grid(ctx, V):
    if ctx['L'] == 'auto':
        return verify.grid_for(V, ctx['t'], ctx['N'])
    return grid_quad.make_grid(ctx['L'], ctx['N'])


def cmd_kernel(ctx):
    """Write the kernel with its main envelope as CSV, optionally binary"""
    V = potential.from_spec(ctx['potential'])
    kernel = engine.solve(V, ctx['t'], kernel_grid(ctx, V),
                          method=ctx['method'],
                          cfg=config.solver_config(ctx),
                          jobs=config.jobs(ctx))
    with open_output(ctx['output']) as stream:
        kernel_io.write_kernel_csv(kernel, stream)
    if ctx['binary'] is not None:
        with open(ctx['binary'], 'wb') as stream:
            kernel_io.write_kernel_binary(kernel, stream)
    log.info('Kernel at t={} on {} points written'.format(ctx['t'],
                                                           ctx['N']))
    return const.EXIT_PASS


def write_report(ctx, verification):
    with open_output(ctx['output']) as stream:
        stream.write(report.to_json(verification))


def cmd_solve(ctx):
    verification = suites.solve_report(suites.SuiteRun(ctx))
    write_report(ctx, verification)
    return suites.exit_code('solve', verification)


def cmd_verify(ctx):
    verification = suites.run_suite(ctx)
    write_report(ctx, verification)
    return suites.exit_code(ctx['suite'], verification)


def cmd_oracle(ctx):
    return cmd_verify(dict(ctx, suite=const.SUITE_ORACLE))


def cmd_demo(ctx):
    """Counterexample and truncation tables as CSV"""
    V = potential.from_spec(ctx['potential'])
    rows = verify.counterexample_demo(ctx['xi'], ctx['demo_t_values'],
                                      ctx['L_values'])
    sweep = engine.truncation_sweep(V, ctx['t'], kernel_grid(ctx, V),
                                    ctx['truncation_levels'],
                                    method=ctx['method'],
                                    cfg=config.solver_config(ctx),
                                    jobs=config.jobs(ctx))
    with open_output(ctx['output']) as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['xi', 't', 'L', 'ratio', 'truncated'])
        for row in rows:
            writer.writerow([repr(float(row[key]))
                             for key in ('xi', 't', 'L', 'ratio')] +
                            [int(row['truncated'])])
        writer.writerow([])
        writer.writerow(['n', 'delta'])
        for level, delta in sweep:
            writer.writerow([repr(float(level)), repr(delta)])
    return const.EXIT_PASS


COMMANDS = {
    'kernel': cmd_kernel,
    'solve': cmd_solve,
    'verify': cmd_verify,
    'oracle': cmd_oracle,
    'demo': cmd_demo,
}


def main():
    try:
        args = docopt.docopt('\n'.join(__doc__.split('\n')[2:]),
                             version=const.VERSION)
    except docopt.DocoptExit as exc:
        sys.stderr.write('{}\n'.format(exc))
        return const.EXIT_CONFIG
    logging.basicConfig(
        level=logging.DEBUG if args['--verbose'] else logging.INFO,
        stream=sys.stderr,
    )

    try:
        ctx = load_context(args)
        if ctx is None:
            return const.EXIT_CONFIG
        verb = next(verb for verb in VERBS if args[verb])
        return COMMANDS[verb](ctx)
    except hlk.InvalidArgument as exc:
        log.error('{}'.format(exc))
        return const.EXIT_CONFIG
    except hlk.NumericFailure as exc:
        log.error('Numeric failure: {}'.format(exc))
        return const.EXIT_NUMERIC
    except (IOError, OSError) as exc:
        log.error('I/O error: {}'.format(exc))
        return const.EXIT_IO
    except KeyboardInterrupt:
        log.info('Interrupt by user, exiting')

    return const.EXIT_PASS


if __name__ == '__main__':
    sys.exit(main())
