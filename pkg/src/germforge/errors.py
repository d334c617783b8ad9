"""Exception hierarchy shared by every germforge module."""


class GermError(Exception):
    """Base class for all library errors."""


class DivisionByZero(GermError, ZeroDivisionError):
    pass


class PrecisionExhausted(GermError, ArithmeticError):
    """A p-adic computation has no certified digits left."""


class MixedRings(GermError, TypeError):
    pass


class UnsupportedRing(GermError, TypeError):
    """The coefficient ring lacks a capability (e.g. an absolute value)."""


class WrongRing(UnsupportedRing):
    pass


class OrderTooHigh(GermError, ValueError):
    pass


class OrderZero(GermError, ValueError):
    pass


class NonInvertibleLeadingCoefficient(GermError, ArithmeticError):
    pass


class NonInvertibleScalar(GermError, ArithmeticError):
    pass


class RootOfUnityObstruction(GermError, ArithmeticError):
    """Some power lambda**j with 1 <= j <= N equals 1."""


class NotTangentToIdentity(GermError, ValueError):
    pass


class DegenerateCombination(GermError, ArithmeticError):
    pass


class VariantMismatch(GermError, ValueError):
    pass


class TrivialCi(GermError, ValueError):
    pass


class RelatorFailure(GermError, AssertionError):
    pass


class SymbolicBlowup(GermError, MemoryError):
    pass


class NotFound(GermError, LookupError):
    pass


class NonRationalInput(GermError, ValueError):
    pass


class NotAUnit(GermError, ValueError):
    pass


class SearchBudgetExceeded(GermError, LookupError):
    pass
