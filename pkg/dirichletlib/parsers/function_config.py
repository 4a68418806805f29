import json
import logging
import numbers

from ..configkeys import functionkeys
from ..constants import (DEFAULT, DIRICHLET, VALID_CONVENTIONS, VALID_TYPES, TYPE_EXP_SUM, TYPE_GEOMETRIC,
                         TYPE_ZETA, TYPE_QUOTIENT, TYPE_SHIFT, TYPE_PRODUCT, TYPE_POWER, TYPE_SCALE, TYPE_EXP_POLY,
                         TYPE_WEIERSTRASS, ZETA_VALIDITY)
from ..engine.errors import ConfigError, InvalidSeries, InvalidArgument
from ..oracle import (as_oracle, geometric_oracle, zeta_oracle, quotient_oracle, shift_oracle, product_oracle,
                      power_oracle, scale_by_exponential, exp_polynomial_oracle)
from ..product import weierstrass_oracle
from ..series import make_sum, TailBound
from ..utility.utils import get_key, pair_to_complex

log = logging.getLogger(__name__)


class FunctionConfig(object):
    """
    Function described by a JSON config

    Keys are resolved through the key tables of ``configkeys.functionkeys`` for the
    config's "schema" (default schema when absent). Nested configs (quotient,
    shift, product, power, scale) inherit the parent's schema.

    :param data: decoded JSON object
    :type data: dict
    :param path: location of this config in the enclosing document, used in errors (optional)

    :example:
        >>> cfg = FunctionConfig({"type": "exp_sum", "terms": [{"lambda": 0, "a": [1, 0]},
        ...                                                   {"lambda": 0.6931471805599453, "a": 1}]})
        >>> cfg.type
        'exp_sum'
        >>> cfg.oracle().origin_order
        0
    """

    def __init__(self, data, path="", schema=None):
        if not isinstance(data, dict):
            raise ConfigError(path or "config", "a function config must be a JSON object")
        self._data = data
        self._path = path
        self._schema = data.get(functionkeys.FN_SCHEMA[DEFAULT], schema) or DEFAULT
        log.debug("Function config at '" + path + "' with schema " + str(self._schema))

    def _key(self, table):
        return get_key(table, self._schema)

    def _field(self, name):
        return self._path + "." + name if self._path else name

    def _get(self, table, required=True, default=None):
        key = self._key(table)
        if key not in self._data:
            if required:
                raise ConfigError(self._field(key), "missing field")
            return default
        return self._data[key]

    def _number(self, table, required=True, default=None):
        value = self._get(table, required, default)
        if value is None or isinstance(value, numbers.Real) and not isinstance(value, bool):
            return value
        raise ConfigError(self._field(self._key(table)), "expected a number, got " + repr(value))

    def _complex(self, value, field):
        try:
            return pair_to_complex(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(field, "expected a complex number as [re, im]: " + str(e))

    def _child(self, value, name):
        return FunctionConfig(value, self._field(name), self._schema)

    @property
    def type(self):
        kind = self._get(functionkeys.FN_TYPE)
        if kind not in VALID_TYPES:
            raise ConfigError(self._field(self._key(functionkeys.FN_TYPE)),
                              "unknown type " + repr(kind) + ", expected one of " + str(VALID_TYPES))
        return kind

    @property
    def declared_order(self):
        return self._number(functionkeys.FN_ORDER, required=False)

    def series(self):
        """
        The exponential sum of an exp_sum config

        :rtype: ExponentialSum
        """
        if self.type != TYPE_EXP_SUM:
            raise ConfigError(self._field(self._key(functionkeys.FN_TYPE)), "not an exp_sum config")
        convention = self._get(functionkeys.SUM_CONVENTION, required=False, default=DIRICHLET)
        if convention not in VALID_CONVENTIONS:
            raise ConfigError(self._field(self._key(functionkeys.SUM_CONVENTION)),
                              "expected one of " + str(VALID_CONVENTIONS) + ", got " + repr(convention))
        raw = self._get(functionkeys.SUM_TERMS)
        if not isinstance(raw, list):
            raise ConfigError(self._field(self._key(functionkeys.SUM_TERMS)), "expected a list of terms")
        terms = []
        for i, each in enumerate(raw):
            term = FunctionConfig(each, self._field(self._key(functionkeys.SUM_TERMS) + "[" + str(i) + "]"),
                                  self._schema)
            lam = term._number(functionkeys.TERM_LAMBDA)
            a = term._complex(term._get(functionkeys.TERM_COEFFICIENT),
                              term._field(term._key(functionkeys.TERM_COEFFICIENT)))
            terms.append((lam, a))
        tail = None
        raw_tail = self._get(functionkeys.SUM_TAIL, required=False)
        if raw_tail is not None:
            cfg = FunctionConfig(raw_tail, self._field(self._key(functionkeys.SUM_TAIL)), self._schema)
            tail = TailBound(cfg._number(functionkeys.TAIL_COEFFICIENT), cfg._number(functionkeys.TAIL_GROWTH))
        try:
            return make_sum(terms, convention, tail, self.declared_order)
        except InvalidSeries as e:
            raise ConfigError(self._field(self._key(functionkeys.SUM_TERMS)), e.message)

    def oracle(self):
        """
        Build the oracle the config describes

        :rtype: MeromorphicOracle
        :raises ConfigError: naming the offending field
        """
        kind = self.type
        try:
            if kind == TYPE_EXP_SUM:
                return as_oracle(self.series())
            if kind == TYPE_GEOMETRIC:
                return geometric_oracle()
            if kind == TYPE_ZETA:
                return zeta_oracle(self._number(functionkeys.FN_VALIDITY, required=False, default=ZETA_VALIDITY))
            if kind == TYPE_QUOTIENT:
                numer = self._child(self._get(functionkeys.QUOTIENT_NUMER), self._key(functionkeys.QUOTIENT_NUMER))
                denom = self._child(self._get(functionkeys.QUOTIENT_DENOM), self._key(functionkeys.QUOTIENT_DENOM))
                return quotient_oracle(numer.oracle(), denom.oracle())
            if kind == TYPE_SHIFT:
                base = self._child(self._get(functionkeys.SHIFT_BASE), self._key(functionkeys.SHIFT_BASE))
                s0 = self._complex(self._get(functionkeys.SHIFT_S0), self._field(self._key(functionkeys.SHIFT_S0)))
                return shift_oracle(base.oracle(), s0)
            if kind == TYPE_PRODUCT:
                factors = self._get(functionkeys.PRODUCT_FACTORS)
                name = self._key(functionkeys.PRODUCT_FACTORS)
                if not isinstance(factors, list) or len(factors) < 2:
                    raise ConfigError(self._field(name), "a product needs a list of at least two factors")
                result = self._child(factors[0], name + "[0]").oracle()
                for i, each in enumerate(factors[1:]):
                    result = product_oracle(result, self._child(each, name + "[" + str(i + 1) + "]").oracle())
                return result
            if kind == TYPE_POWER:
                base = self._child(self._get(functionkeys.SHIFT_BASE), self._key(functionkeys.SHIFT_BASE))
                k = self._number(functionkeys.POWER_EXPONENT)
                if int(k) != k:
                    raise ConfigError(self._field(self._key(functionkeys.POWER_EXPONENT)), "expected an integer")
                return power_oracle(base.oracle(), int(k))
            if kind == TYPE_SCALE:
                base = self._child(self._get(functionkeys.SHIFT_BASE), self._key(functionkeys.SHIFT_BASE))
                return scale_by_exponential(base.oracle(), self._number(functionkeys.SCALE_LAMBDA))
            if kind == TYPE_EXP_POLY:
                coefficients = self._get(functionkeys.EXP_POLY_COEFFS)
                field = self._field(self._key(functionkeys.EXP_POLY_COEFFS))
                if not isinstance(coefficients, list):
                    raise ConfigError(field, "expected a list of coefficients")
                return exp_polynomial_oracle([self._complex(c, field) for c in coefficients])
            zeros = self._get(functionkeys.WEIERSTRASS_ZEROS)
            field = self._field(self._key(functionkeys.WEIERSTRASS_ZEROS))
            if not isinstance(zeros, list):
                raise ConfigError(field, "expected a list of zeros")
            return weierstrass_oracle([self._complex(w, field) for w in zeros])
        except InvalidArgument as e:
            raise ConfigError(self._path or kind, e.message)

    def to_dict(self):
        return dict(self._data)


def load_function(path):
    """
    Read a JSON function config file

    :param path: file path
    :rtype: FunctionConfig
    :raises ConfigError: when the file cannot be read or decoded
    """
    try:
        with open(path, encoding="utf-8") as stream:
            data = json.load(stream)
    except OSError as e:
        raise ConfigError(str(path), "cannot read the file: " + str(e))
    except ValueError as e:
        raise ConfigError(str(path), "invalid JSON: " + str(e))
    log.info("Loaded function config " + str(path))
    return FunctionConfig(data)
