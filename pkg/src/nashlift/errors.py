"""Exception hierarchy.

Hypothesis violations are the errors a caller may legitimately trigger by
feeding geometrically inadmissible input (the CLI maps them to exit code 2);
everything else is an internal or usage error (exit code 1).
"""


class NashliftError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ContextMismatchError(NashliftError):
    """Operands belong to different ring contexts."""


class PolynomialSyntaxError(NashliftError):
    """Malformed polynomial / definition-file text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class DegenerateFrameError(NashliftError):
    """No admissible basis columns: every candidate certificate minor vanishes."""


class DegenerateLadderError(NashliftError):
    """Too few sections to form the wedge products of the next ladder entry."""


class DegenerateInputError(NashliftError):
    """All candidate minors vanish after the configured row-reduction retries."""


class NonLiftableDivisionError(NashliftError):
    """Series division with valuation(numerator) < valuation(denominator)."""


class IndeterminatePullbackError(NashliftError):
    """A denominator vanishes identically along the arc up to its precision."""


class InsufficientPrecisionError(NashliftError):
    """Truncation exhausted before the computation could stabilise."""

    def __init__(self, message, required=None):
        self.required = required
        if required is not None:
            message = f"{message} (retry with truncation >= {required})"
        super().__init__(message)


class HypothesisViolation(NashliftError):
    """A geometric hypothesis of the lifting theory fails for this input."""

    exit_code = 2


class ArcInSingularLocusError(HypothesisViolation):
    """The arc lies entirely inside the singular locus."""

    def __init__(self, detail=""):
        message = ("hypothesis violation: the arc image must contain a "
                   "nonsingular point of the variety")
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class ArcInCenterError(HypothesisViolation):
    """The arc lies entirely inside the blowup center."""

    def __init__(self, detail=""):
        message = ("hypothesis violation: arc not liftable through this "
                   "center because it is contained in the blowup center")
        if detail:
            message += f" ({detail})"
        super().__init__(message)
