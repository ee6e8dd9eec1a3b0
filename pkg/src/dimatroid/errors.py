"""Exception hierarchy shared by every module."""


class DimatroidError(Exception):
    """Base class for all library errors."""


class UniverseMismatch(DimatroidError, ValueError):
    """An element set or matroid was used with the wrong ground-set size."""


class PreconditionError(DimatroidError, ValueError):
    """An operation was called outside its documented domain."""


class LoopError(PreconditionError):
    """A cover or fairness operation received a matroid with a loop."""


class SizeCapExceeded(PreconditionError):
    """An exhaustive routine was asked to run above its size cap."""


class SpecError(DimatroidError, ValueError):
    """A matroid or instance description is malformed."""


class InvariantViolation(DimatroidError, RuntimeError):
    """A result contradicts a theorem the algorithm relies on.

    These are never expected; ``theorem`` names the statement that would be
    false if the error were genuine.
    """

    def __init__(self, theorem: str, message: str):
        super().__init__(f"[{theorem}] {message}")
        self.theorem = theorem
