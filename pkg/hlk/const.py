# -*- coding: utf-8 -*-


"""Constant used by hlk packages"""

# hlk version number
VERSION = 0.1

# Grid defaults
DEFAULT_N = 400
DEFAULT_X_MAX = 5.
# Gaussian tail beyond x_max + 10 sqrt(t) is below e^-25
TAIL_WIDTHS = 10.

# Quadrature
RULE_SIMPSON = 'simpson'
RULE_TRAPEZOID = 'trapezoid'
GAUSS_LEGENDRE_ORDER = 4

# Weights
WEIGHT_UNWEIGHTED = 'unweighted'
WEIGHT_EXPONENTIAL = 'exponential'
WEIGHT_BOUNDARY = 'boundary'
WEIGHT_EXPONENTIAL_BOUNDARY = 'exponential_boundary'
WEIGHT_KINDS = [
    WEIGHT_UNWEIGHTED,
    WEIGHT_EXPONENTIAL,
    WEIGHT_BOUNDARY,
    WEIGHT_EXPONENTIAL_BOUNDARY,
]

# Envelopes
ENVELOPE_KINDS = [
    'exponential',
    'boundary',
    'main',
    'sandwich_lower',
    'sandwich_upper',
    'boundary_sharp',
]

# Power iteration
POWER_TOL = 1e-8
POWER_MAX_ITER = 10000
FORM_TOL = 1e-10

# Solver methods
METHOD_CLOSED_FORM = 'closed_form'
METHOD_DUHAMEL = 'duhamel'
METHOD_CRANK_NICOLSON = 'crank_nicolson'
METHOD_LIE_TROTTER = 'lie_trotter'
METHOD_MONTE_CARLO = 'monte_carlo'
SOLVER_METHODS = [
    METHOD_DUHAMEL,
    METHOD_CRANK_NICOLSON,
    METHOD_LIE_TROTTER,
]
SYMMETRIC_METHODS = [
    METHOD_CLOSED_FORM,
    METHOD_CRANK_NICOLSON,
]
DIVERGENCE_STREAK = 3
COLUMN_BLOCK = 64
# Duhamel support-to-support lags are kept up to this size
LAG_CACHE_BYTES = 2 ** 28

# Verification defaults
DEFAULT_T_VALUES = [0.05, 0.1, 0.5, 1., 2., 5.]
DEFAULT_XI_VALUES = [-2., -1., 0., 1., 2.]
DEFAULT_LAMBDA_VALUES = [0.25, 1., 4., 16.]
DEFAULT_GREEN_POINTS = [
    (1., 2.),
    (0.5, 0.5),
    (3., 1.),
    (0.1, 5.),
    (2., 2.),
]
UNDERFLOW_MASK = 1e-6
AGREEMENT_MASK = 1e-4
TOLERANCES = {
    'closed_form': 1e-12,
    'ultracontractivity': 1e-10,
    'quadrature': 1e-6,
    'solver': 1e-3,
    'lie_trotter': 5e-3,
    'positivity': 1e-8,
    'domination': 1e-10,
    'oracle': 1e-7,
    'oracle_exact': 1e-12,
}
SIGMA_RULE = 3.

# Discrete oracle
EXPONENTS = [1., 4. / 3., 2., 4., float('inf')]
NORM_STARTS = 200
NORM_TOL = 1e-9
NORM_MAX_ITER = 5000
MIN_STATES = 2
MAX_STATES = 6

# Exit codes
EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

# Kernel export
BINARY_MAGIC = b'HLKM'
BINARY_VERSION = 1
CSV_HEADER = ['x', 'y', 'k', 'env_main']

# CLI Constant
JOBS_ENV_VAR = 'HLK_JOBS'
DEFAULT_CONFIG_FILE = '~/.config/hlk.json'

# Suites
SUITE_CLOSED_FORM = 'closed-form'
SUITE_POTENTIAL = 'potential'
SUITE_CROSS_METHOD = 'cross-method'
SUITE_MAIN = 'main'
SUITE_COUNTEREXAMPLE = 'counterexample'
SUITE_ORACLE = 'oracle'
SUITE_ALL = 'all'
SUITES = [
    SUITE_CLOSED_FORM,
    SUITE_POTENTIAL,
    SUITE_CROSS_METHOD,
    SUITE_MAIN,
    SUITE_COUNTEREXAMPLE,
    SUITE_ORACLE,
    SUITE_ALL,
]
# Suites reporting tables whose exit code never signals failure
DEMO_SUITES = [SUITE_COUNTEREXAMPLE]
