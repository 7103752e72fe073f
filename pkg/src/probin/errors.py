"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the validity region of a coefficient,
    weight, or problem builder (e.g. evaluating past the first zero of
    the model coefficient)."""


class BracketFailure(RuntimeError):
    """The eigenvalue bracket search exhausted its growth budget without
    finding a sign change."""


class ToleranceFailure(RuntimeError):
    """Bisection stalled before reaching the requested eigenvalue
    tolerance."""
