"""Exception hierarchy shared by every module of the package."""


class HopfLambdaError(Exception):
    """Base class for all errors raised by hopflambda."""


# -- input / parsing -------------------------------------------------------

class ParseError(HopfLambdaError, ValueError):
    """Malformed DSL or braid text. ``pos`` is a 0-based character offset."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} (at position {pos})"
            if text is not None:
                message += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


class UnknownIdentifier(ParseError):
    pass


class NonzeroConstantTerm(HopfLambdaError, ValueError):
    """The map does not send the origin to the origin."""


class NonPolynomial(ParseError):
    """Division or another non-polynomial construct in a map definition."""


class IndexOutOfRange(HopfLambdaError, ValueError):
    pass


class NotATree(HopfLambdaError, ValueError):
    pass


# -- numerics --------------------------------------------------------------

class ZeroTriple(HopfLambdaError, ArithmeticError):
    """A Gauss-map triple (A, B, C) vanished (or nearly so) at a sample point."""


class RankDeficient(HopfLambdaError, ArithmeticError):
    pass


class NoPreimage(HopfLambdaError):
    pass


class RankDrop(HopfLambdaError, ArithmeticError):
    """The constraint Jacobian lost rank while tracing: q was not a regular value."""


class MaxStepsExceeded(HopfLambdaError):
    pass


class CurvesTooClose(HopfLambdaError):
    pass


class PoorConditioning(HopfLambdaError):
    pass


class AtPole(HopfLambdaError, ValueError):
    pass


class BudgetTooSmall(HopfLambdaError):
    pass


class NotIsolated(HopfLambdaError):
    """Sampling suggests the origin is not an isolated critical point."""
