class InputError(ValueError):
    """Malformed or inadmissible user input."""

    def __init__(self, message, line=None, field=None):
        super().__init__(message)
        self.line = line
        self.field = field

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field is not None:
            where.append(f"field {self.field!r}")
        msg = super().__str__()
        return f"{msg} ({', '.join(where)})" if where else msg


class DegenerateHullError(InputError):
    """The convex hull of the configuration is not full dimensional."""


class ScaleGuardError(RuntimeError):
    """An enumeration exceeded its configured size bound."""

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound
