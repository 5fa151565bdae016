"""Exception hierarchy shared by every henonseq module."""


class HenonSeqError(Exception):
    """Base class for all package errors."""


class DivergenceError(HenonSeqError, ArithmeticError):
    """Raised when an orbit leaves the divergence bound or becomes non-finite."""

    def __init__(self, k, x=None, y=None, bound=None):
        self.k = k
        self.x = x
        self.y = y
        self.bound = bound
        super().__init__(
            f"orbit diverged at iteration {k}: x={x!r}, y={y!r} (bound {bound!r})"
        )


class LengthMismatch(HenonSeqError, ValueError):
    pass


class EmptySequence(HenonSeqError, ValueError):
    pass


class InsufficientSamples(HenonSeqError, ValueError):
    pass


class SequenceTooShort(HenonSeqError, ValueError):
    pass


class WrongLength(HenonSeqError, ValueError):
    pass


class BitFileError(HenonSeqError, ValueError):
    """Malformed or truncated bit file."""
