# All common constants for the lib can be put here

import math

DEFAULT = "DEFAULT"

# Sign conventions of an exponential sum
DIRICHLET = "dirichlet"
EXPONENTIAL = "exponential"
VALID_CONVENTIONS = [DIRICHLET, EXPONENTIAL]

# Function config types
TYPE_EXP_SUM = "exp_sum"
TYPE_GEOMETRIC = "geometric"
TYPE_ZETA = "zeta"
TYPE_QUOTIENT = "quotient"
TYPE_SHIFT = "shift"
TYPE_PRODUCT = "product"
TYPE_POWER = "power"
TYPE_SCALE = "scale"
TYPE_EXP_POLY = "exp_poly"
TYPE_WEIERSTRASS = "weierstrass"
VALID_TYPES = [TYPE_EXP_SUM, TYPE_GEOMETRIC, TYPE_ZETA, TYPE_QUOTIENT, TYPE_SHIFT, TYPE_PRODUCT,
               TYPE_POWER, TYPE_SCALE, TYPE_EXP_POLY, TYPE_WEIERSTRASS]

# Record kinds
KIND_ZERO = "zero"
KIND_POLE = "pole"
INFINITY = math.inf

# Origin order detection
ORIGIN_ORDER_MAX = 8
ORIGIN_ORDER_THRESHOLD = 1e-9
LAURENT_RADIUS = 0.25
LAURENT_SAMPLES = 64

# Tail bounded sums
TAIL_MARGIN = 0.1

# Quadrature
GL_ORDER = 16
INITIAL_PANELS = 32
MAX_PANELS = 2 ** 14
QUAD_TOL = 1e-8
JENSEN_QUAD_TOL = 1e-11
WINDING_SLACK = 0.25
LOG_SINGULAR_FLOOR = 1e-12

# Boundary protocol
BOUNDARY_DELTA = 1e-6
BOUNDARY_RETRIES = 12
CONTOUR_GUARD = 1e-12
PRESCAN_GUARD = 1e-9
PRESCAN_POINTS = 512

# Localisation
MULTIPLICITY_CAP = 16
RESOLUTION_FLOOR = 1e-7
ISOLATE_SIDE = 2.0
NEWTON_MAX_ITER = 60
SPLIT_OFFSETS = [0.0137, -0.0213, 0.0291, -0.0377, 0.0419, -0.0503]
POLE_CIRCLE = 0.1

# Integrated counting
N_GRID_POINTS = 16
JUMP_RESOLUTION = 1e-7

# Zeta
ZETA_VALIDITY = 35.0
ZETA_DPS = 30

# Thresholds of the verification harness
THETA = 0.05
THETA_PRIME = 0.01
MATCH_TOL = 1e-6
TAU = 0.1
LIMIT_SIGMA = 40.0
LIMIT_TOL = 1e-8
DIVERGENCE_SLOPE = -0.5
GROWTH_CONSTANT = 4 * (2 + math.log(2))

# Almost periodic scans
SCAN_RANGE = (0.0, 5000.0)
SCAN_CHUNK = 2 ** 20
SEED_SAMPLES = 4096

# Branch labels of the dichotomy check
BRANCH_LINEAR = "linear-lower-bound"
BRANCH_DIVERGENT = "divergent-tail-suggestive"
BRANCH_DEGENERATE = "degenerate"

# Catalog roles
ROLE_POSITIVE = "positive-example"
ROLE_CONTROL = "negative-control"
ROLE_PAIR = "counterexample-pair member"

# Uniqueness verdicts
DISTINCT = "distinct"
IDENTICAL = "identical (numerically)"
INCONCLUSIVE = "inconclusive"

# Patterns
PAT_GRID = r"^\s*(?P<start>[^:]+):(?P<stop>[^:]+):(?P<count>[0-9]+)(?P<log>log)?\s*$"
PAT_COMPLEX_PAIR = r"^\s*(?P<re>[-+0-9.eE]+)\s*,\s*(?P<im>[-+0-9.eE]+)\s*$"
PAT_INFINITY = r"^\s*(inf|infinity|oo)\s*$"

# Output
CSV_COLUMNS = ["r", "n_zero", "n_pole", "N_zero", "N_pole", "ratio"]
CSV_FLOAT_FORMAT = "%.10g"

# Exit codes
EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
