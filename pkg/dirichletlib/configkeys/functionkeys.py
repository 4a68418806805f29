from ..constants import DEFAULT

# --------------------- #
# common
# --------------------- #
FN_TYPE = {
    DEFAULT: "type"
}
FN_SCHEMA = {
    DEFAULT: "schema"
}
FN_VALIDITY = {
    DEFAULT: "validity_radius"
}
FN_ORDER = {
    DEFAULT: "declared_order"
}

# --------------------- #
# exp_sum
# --------------------- #
SUM_CONVENTION = {
    DEFAULT: "convention"
}
SUM_TERMS = {
    DEFAULT: "terms"
}
TERM_LAMBDA = {
    DEFAULT: "lambda"
}
TERM_COEFFICIENT = {
    DEFAULT: "a"
}
SUM_TAIL = {
    DEFAULT: "tail_bound"
}
TAIL_COEFFICIENT = {
    DEFAULT: "coefficient_bound"
}
TAIL_GROWTH = {
    DEFAULT: "growth_floor"
}

# --------------------- #
# compositions
# --------------------- #
QUOTIENT_NUMER = {
    DEFAULT: "numer"
}
QUOTIENT_DENOM = {
    DEFAULT: "denom"
}
SHIFT_BASE = {
    DEFAULT: "base"
}
SHIFT_S0 = {
    DEFAULT: "s0"
}
PRODUCT_FACTORS = {
    DEFAULT: "factors"
}
POWER_EXPONENT = {
    DEFAULT: "k"
}
SCALE_LAMBDA = {
    DEFAULT: "lambda"
}

# --------------------- #
# closed forms
# --------------------- #
EXP_POLY_COEFFS = {
    DEFAULT: "coefficients"
}
WEIERSTRASS_ZEROS = {
    DEFAULT: "zeros"
}
