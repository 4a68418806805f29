import logging

log = logging.getLogger(__name__)


class CustomException(Exception):
    """
    Base of every dirichletlib error; carries a stripped message
    """

    def __init__(self, message):
        """
        :param message: description of the failure
        """
        self.message = message.strip()

    def __repr__(self):
        return '%s: %s' % (self.__class__.__name__, self.message)

    __str__ = __repr__


class ConfigError(CustomException):
    """
    Malformed function config or command line value
    """

    def __init__(self, field, message):
        """
        :param field: name of the offending config field or flag
        :param message: what is wrong with it
        """
        self.field = field.strip()
        self.message = message.strip()

    def __repr__(self):
        return 'The field " %s " gave the error " %s ".' % (self.field, self.message)

    __str__ = __repr__


class ToleranceUnattainable(CustomException):
    """
    Raised when the requested tolerance cannot be met; carries the best achievable bound
    """

    def __init__(self, message, achievable):
        self.achievable = achievable
        super(ToleranceUnattainable, self).__init__(message + " (achievable bound " + repr(achievable) + ")")


class UncertifiedCount(CustomException):
    def __init__(self, message, diagnostic=None):
        self.diagnostic = diagnostic
        super(UncertifiedCount, self).__init__(message)


class QuadratureNotConverged(CustomException):
    def __init__(self, message, achieved):
        self.achieved = achieved
        super(QuadratureNotConverged, self).__init__(message + " (achieved " + repr(achieved) + ")")


class InvalidSeries(CustomException):
    pass


class InvalidArgument(CustomException):
    pass


class ValidityExceeded(CustomException):
    pass


class OriginOrderError(CustomException):
    pass


class NearContour(CustomException):
    pass


class InsufficientGrid(CustomException):
    pass


class HypothesisViolation(CustomException):
    pass


class CertificationRefused(CustomException):
    pass


class BoundViolation(CustomException):
    pass
