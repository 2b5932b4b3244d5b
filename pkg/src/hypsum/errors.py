"""Exception types shared across the package.

Every domain failure maps onto one of these so the CLI can translate it
into an exit code without string matching.
"""


class HypsumError(ArithmeticError):
    """Base class for all exact-evaluation failures."""

    code = "ERROR"


class PochhammerZeroDivision(HypsumError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class UndefinedSeries(HypsumError):
    """A lower-parameter Pochhammer symbol vanishes inside the summation range."""

    code = "UNDEFINED_SERIES"


class ParameterPole(HypsumError):
    code = "PARAMETER_POLE"


class ExcludedDomain(HypsumError):
    code = "EXCLUDED_DOMAIN"


class UnknownEntry(KeyError):
    code = "UNKNOWN_ENTRY"


class RestrictedForm(HypsumError):
    """A transcribed formula contains a symbol with no value at this point."""

    code = "RESTRICTED"


class GammaSumError(HypsumError):
    """Terms of a sum normalized to incompatible pi powers or residual gammas."""

    code = "INCOMPATIBLE_TERMS"
