"""Exception hierarchy shared by the library and the CLI."""


class TripermError(Exception):
    """Base class for all library errors."""


class UsageError(TripermError, ValueError):
    """Malformed input: shape, arity or modulus mismatch, bad documents."""


class DomainError(TripermError, ValueError):
    """Mathematically invalid input, e.g. a map that is not of maximal orbit."""


class ResourceError(TripermError, RuntimeError):
    """A configured size cap would be exceeded."""
