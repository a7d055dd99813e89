"""Exception types shared across the package."""


class CatbenchError(Exception):
    """Base class for all catbench errors."""


class MalformedGraph(CatbenchError):
    """A directed multigraph references missing objects or reuses edge ids."""


class NonComposable(CatbenchError):
    """Attempted composition of morphisms whose endpoints do not meet."""


class UnknownObject(CatbenchError):
    """An object id is not part of the category."""


class InfeasibleEnumeration(CatbenchError):
    """A capped enumeration would have missed elements (cyclic hom-sets)."""


class UnknownPage(CatbenchError):
    """A page id is not part of the world."""


class UnknownEntityOrMetric(CatbenchError):
    """Numeric panel lookup for an entity or metric that does not exist."""


class InfeasibleConfig(CatbenchError):
    """World configuration cannot support the requested structures."""


class InfeasibleWorld(CatbenchError):
    """The world lacks a structure a task generator needs."""


class AmbiguousTask(CatbenchError):
    """Uniqueness certification found zero or several satisfying answers."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class MalformedTrace(CatbenchError):
    """An agent trace violates the trace schema."""


class ProtocolViolation(CatbenchError):
    """An agent broke the tool-call protocol (bad call, post-finish call)."""
