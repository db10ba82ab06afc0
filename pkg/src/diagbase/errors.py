"""Exception types shared across the package."""


class DiagbaseError(Exception):
    pass


class MalformedPermutationError(DiagbaseError, ValueError):
    """Input sequence is not a bijection on 0..n-1."""


class DomainError(DiagbaseError, ValueError):
    """Arguments are outside the domain of the requested operation."""


class UnsupportedGroupError(DiagbaseError, ValueError):
    """Requested group family/parameter is not in the catalog."""


class ResourceLimitError(DiagbaseError, RuntimeError):
    """A configured cap (order, memory, omega size) was exceeded.

    Deliberately distinct from a negative mathematical answer: callers must
    never confuse "ran out of budget" with "no such element exists".
    """


class InternalConsistencyError(DiagbaseError, RuntimeError):
    """A validated invariant failed; signals a bug, not a mathematical fact."""


class MissingDataError(DiagbaseError, ValueError):
    """A caller-supplied bound is required and no built-in default exists."""
