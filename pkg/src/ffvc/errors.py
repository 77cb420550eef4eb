class BudgetExceeded(Exception):
    """A guarded computation would exceed (or has exhausted) its work budget."""

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; always indicates a bug."""
