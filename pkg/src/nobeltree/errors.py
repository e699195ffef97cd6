"""Exception hierarchy shared by every nobeltree module."""

from __future__ import annotations


class GenealogyError(Exception):
    """Base class for all data and usage errors raised by nobeltree."""


class DuplicateIdError(GenealogyError):
    pass


class DanglingEdgeError(GenealogyError):
    pass


class CycleDetectedError(GenealogyError):
    """Raised when the advisor relation contains a directed cycle.

    ``cycle`` holds the offending ids in path order, first id repeated at the end.
    """

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("cycle detected: " + " -> ".join(self.cycle))


class UnknownIdError(GenealogyError, KeyError):
    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(f"unknown scholar id {node_id!r}")

    def __str__(self) -> str:
        return self.args[0]


class EmptySubsetError(GenealogyError):
    pass


class SameNodeError(GenealogyError):
    pass


class NoLaureatesError(GenealogyError):
    pass


class DegenerateGroupError(GenealogyError):
    pass


class EmptySeriesError(GenealogyError):
    pass


class IoFailure(GenealogyError):
    pass


class ParseError(GenealogyError):
    """A diagnostic tied to a line of an input file."""

    def __init__(self, path, line: int, reason: str):
        self.path = str(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")


class MalformedRowError(ParseError):
    pass


class UnknownFieldError(ParseError):
    pass


class BadYearError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass
