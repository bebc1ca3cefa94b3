"""Exception hierarchy.

Two families: ``ValidationError`` for malformed inputs (bad sets, excluded
parameters) and ``NumericalDiagnosticError`` for computations whose
numerical self-checks failed. The CLI maps them to exit codes 2 and 3.
"""


class ShiftCISError(Exception):
    pass


class ValidationError(ShiftCISError, ValueError):
    pass


class NumericalDiagnosticError(ShiftCISError, ArithmeticError):
    pass


# transversal sets
class LengthError(ValidationError):
    pass


class OverlapError(ValidationError):
    pass


class GapError(ValidationError):
    pass


class ExcludedAlphaError(ValidationError):
    """The shift lies in the exceptional set; the symbol curve hits 0."""


class UndefinedDirectionError(ValidationError):
    pass


# symbol curves
class OriginCrossingError(ValidationError):
    pass


class NonIntegerIndexError(NumericalDiagnosticError):
    pass


class OriginProximityError(NumericalDiagnosticError):
    pass


class UndersampledError(NumericalDiagnosticError):
    pass


# polynomials / special functions
class DegenerateError(ValidationError):
    pass


class ZeroBaseError(ValidationError):
    pass


class PoleError(ValidationError):
    pass


class IntegerPoleError(PoleError):
    pass


# operators
class NearSingularSymbolError(NumericalDiagnosticError):
    pass


class WindowError(ValidationError):
    pass


class NonIntegerExponentError(NumericalDiagnosticError):
    pass


class HalfIntegerAlphaError(ValidationError):
    pass
