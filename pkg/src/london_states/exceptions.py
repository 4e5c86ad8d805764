class ImproperlyConfigured (Exception):
    """A LONDON_STATES_* setting could not be parsed"""
    pass


class UsageError (ValueError):
    """Invalid command line configuration"""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class NumericDomainError (ValueError):
    """A value lies outside the domain of the requested computation"""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class InvalidArgument (NumericDomainError):
    """Invalid numeric argument"""
    pass


class InvalidDimension (NumericDomainError):
    """The Fock space dimension does not support the operation"""
    pass


class EvaluationError (NumericDomainError):
    """A number-operator function is not finite on the truncated space"""
    pass


class TruncationError (NumericDomainError):
    """Too much probability lies beyond the truncated Fock space"""
    pass


class InvalidState (NumericDomainError):
    """The state vector is not unit normalised"""
    pass


class InvalidDistribution (NumericDomainError):
    """The photon distribution is not normalised"""
    pass


class UndefinedStatistic (NumericDomainError):
    """The statistic is 0/0 for this distribution"""
    pass


class BracketError (NumericDomainError):
    """The bracket does not contain a sign change"""

    def __init__(self, message, lo_value=None, hi_value=None, parameter=None):
        super().__init__(message, parameter=parameter)
        self.lo_value = lo_value
        self.hi_value = hi_value


class InvalidGrid (NumericDomainError):
    """Degenerate phase space grid"""
    pass


class InvalidWindow (NumericDomainError):
    """The envelope window does not fit the trace"""
    pass


class ConvergenceError (ArithmeticError):
    """The propagator did not reach its tolerance"""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
