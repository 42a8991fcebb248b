"""Exception types raised by carlsonkit."""


class CarlsonKitError(Exception):
    """Base class for all library errors."""


class EmptyMeasure(CarlsonKitError):
    """The measure has no atoms, i.e. it is the zero measure."""


class DegenerateSum(CarlsonKitError):
    """The exponential sum has no terms."""


class AtomTooClose(CarlsonKitError):
    """An interior atom sits too close to the sweeping circle."""

    def __init__(self, message, index=None, ratio=None):
        super().__init__(message)
        self.index = index
        self.ratio = ratio


class AliasRisk(CarlsonKitError):
    """Requested moment order is too high for the boundary grid."""


class NonRealFrequency(CarlsonKitError):
    """A frequency expected to be real has a nonzero imaginary part."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ParseError(CarlsonKitError):
    """A text document could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
