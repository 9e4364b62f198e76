"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class BudgetError(RuntimeError):
    """A search or enumeration would exceed its resource cap."""


class SchemaError(ValueError):
    """An instance file does not match the JSON schema.

    ``field`` names the offending location (dotted path) when known.
    """

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field is not None:
            message = f"{message} (field: {field})"
        super().__init__(message)
