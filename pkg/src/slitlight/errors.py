"""Exception types shared across the engine."""


class CapacityError(RuntimeError):
    """A requested object would exceed the configured size cap."""


class PhysicsError(ValueError):
    """A quantity is undefined for the given state (vacuum, dark slit, ...)."""


class ConfigError(ValueError):
    """A scenario file failed to parse or validate.

    ``field`` holds a dotted path into the document when the failure is
    tied to a specific entry; ``line`` is set for raw parse errors.
    """

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line
