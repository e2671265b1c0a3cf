"""Exception hierarchy shared by all framelab modules."""


class FrameLabError(Exception):
    """Base class for every error raised by framelab."""


class NotAFrameError(FrameLabError, ValueError):
    """The vectors do not span the ambient space (or are malformed)."""


class DualityError(FrameLabError, ValueError):
    """A candidate dual fails the reconstruction identity."""

    def __init__(self, message, max_residual=None):
        super().__init__(message)
        self.max_residual = max_residual


class ComputationError(FrameLabError, RuntimeError):
    """A numerical routine failed or produced an inconsistent value."""


class EnumerationCapError(FrameLabError, ValueError):
    """Exhaustive enumeration would exceed the configured cap."""

    def __init__(self, message, count, cap):
        super().__init__(message)
        self.count = count
        self.cap = cap
