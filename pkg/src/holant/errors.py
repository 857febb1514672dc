"""Exception hierarchy shared by all solver modules."""


class HolantError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(HolantError, ValueError):
    """Malformed or inconsistent arguments (arity/domain mismatches etc.)."""


class ResourceExhaustedError(HolantError):
    """A configured budget (enumeration cap, separator width cap) was exceeded."""

    def __init__(self, message, last_attempt=None):
        super().__init__(message)
        self.last_attempt = last_attempt


class FailedPreconditionError(HolantError):
    """A caller-supplied state (e.g. an infeasible conditioning) violates a precondition."""


class InfeasibleBoundaryError(HolantError):
    """A boundary fill gave a zero-mass sub-problem; retry with another fill or radius."""


class InfeasibleInstanceError(HolantError):
    """The instance admits no feasible configuration at all."""


class InstanceParseError(HolantError, ValueError):
    """Instance file could not be parsed; carries the offending line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
