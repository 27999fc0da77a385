"""Exception hierarchy shared by every module."""


class QtChainError(Exception):
    """Base class for all errors raised by qtchain."""


class OutOfRange(QtChainError):
    def __init__(self, x, y, v, k):
        self.x, self.y, self.v, self.k = x, y, v, k
        super().__init__(f"value {v} at ({x},{y}) not in [1,{k}]")


class ShapeMismatch(QtChainError):
    pass


class PreconditionFailed(QtChainError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}: {witness}")


class InternalContradiction(QtChainError):
    """A state the characterization rules out was reached anyway."""


class InvalidPath(QtChainError):
    pass


class PathSyntaxError(QtChainError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at column {position})")


class BoundExceeded(QtChainError):
    pass


class Mismatch(QtChainError):
    def __init__(self, k, message):
        self.k = k
        super().__init__(f"k={k}: {message}")


class BijectionFailure(QtChainError):
    pass


class UnrepresentableValue(QtChainError):
    pass


class FormatError(QtChainError):
    """Malformed table / path / JSON input."""
