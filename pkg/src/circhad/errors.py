"""Exception types shared across the package."""


class CapacityError(Exception):
    """A request exceeds a hard feasibility bound (group order, search space)."""


class FormatError(ValueError):
    """Malformed matrix/report text. Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
