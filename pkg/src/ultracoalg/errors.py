"""Exception hierarchy shared by all ultracoalg modules."""


class UltracoalgError(Exception):
    """Base class for every error raised by this package."""


class PrimeMismatch(UltracoalgError, ValueError):
    pass


class DivisionByZeroOrImprecise(UltracoalgError, ZeroDivisionError):
    """Divisor is zero or indistinguishable from zero at its precision."""


class InsufficientPrecision(UltracoalgError, ArithmeticError):
    pass


class PrecisionExhausted(UltracoalgError, ArithmeticError):
    """A pivot valuation consumed the precision budget of a kernel computation."""


class SpaceMismatch(UltracoalgError, ValueError):
    pass


class NotACoideal(UltracoalgError, ValueError):
    def __init__(self, message, generator=None, residual=None):
        super().__init__(message)
        self.generator = generator
        self.residual = residual


class NotACoalgebraMorphism(UltracoalgError, ValueError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


class NotAComoduleMorphism(UltracoalgError, ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotAModuleAction(UltracoalgError, ValueError):
    def __init__(self, message, counterexample=None, residual=None):
        super().__init__(message)
        self.counterexample = counterexample
        self.residual = residual


class NotAnInterleaving(UltracoalgError, ValueError):
    def __init__(self, message, square=None, residual=None):
        super().__init__(message)
        self.square = square
        self.residual = residual


class SourceCheckFailed(UltracoalgError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConfigInvalid(UltracoalgError, ValueError):
    pass
