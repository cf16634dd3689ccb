"""Exception types shared across the package."""


class AFTError(Exception):
    """Base class for all errors raised by aftkit."""


class InvalidArgumentError(AFTError, ValueError):
    pass


class OutOfRangeError(AFTError, IndexError):
    """A request reached past the sieved range of a MobiusTable."""


class PreconditionError(AFTError, ValueError):
    """Input violates a normalization the extraction formula relies on."""


class DegenerateWeightError(AFTError, ArithmeticError):
    pass


class ConvergenceError(AFTError, RuntimeError):
    """Adaptive truncation hit ``K_max`` before meeting its tolerance.

    ``partials`` holds the last two partial sums so callers can still
    report how far the series got.
    """

    def __init__(self, message, partials=(), K_used=0, n=None):
        super().__init__(message)
        self.partials = tuple(partials)
        self.K_used = K_used
        self.n = n
