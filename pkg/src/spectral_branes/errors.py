class ConfigError(ValueError):
    """Raised for malformed or inconsistent input (CLI exit code 2)."""


class IdentityViolation(RuntimeError):
    """Raised when an identity that must hold exactly fails (CLI exit code 3).

    Carries both sides of the failed identity so reports can show them.
    """

    def __init__(self, name, lhs, rhs, context=None):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.context = context or {}
        super().__init__(f"{name}: {lhs!r} != {rhs!r} ({self.context})")
