"""Exception types shared across the toolkit."""

from __future__ import annotations


class KpkitError(Exception):
    """Base class for all toolkit errors."""


class UnknownNode(KpkitError):
    """An operation referenced a node that is not in the graph."""


class UnknownEndpoint(KpkitError):
    """An edge references an endpoint missing from the node set."""


class SelfLoop(KpkitError):
    """Self-loops are not representable in a simple graph."""


class DegenerateGraph(KpkitError):
    """Whole-network measure requested on a graph with fewer than 2 nodes."""


class DegenerateResidual(KpkitError):
    """Node removal would leave fewer than 2 nodes."""


class EmptySet(KpkitError):
    """A nonempty node set was required."""


class InvalidConfig(KpkitError):
    """Configuration or flag value outside its documented domain."""


class TooLarge(KpkitError):
    """Exhaustive enumeration refused: search space above the safety cap."""


class ParseError(KpkitError):
    """Malformed input file.

    Carries the input name and 1-based line number so callers can point
    at the offending row.
    """

    def __init__(self, message: str, source: str = "<stream>", line: int | None = None):
        self.source = source
        self.line = line
        if line is None:
            super().__init__(f"{source}: {message}")
        else:
            super().__init__(f"{source}: line {line}: {message}")


class EmptyParticipants(ParseError):
    """A photo record carried no participants."""


class SelfInteraction(ParseError):
    """An interaction row had source equal to target."""


class UnknownKind(ParseError):
    """An interaction row carried an unrecognized kind."""


class UnknownRole(ParseError):
    """A roles row carried a label outside the role vocabulary."""


class DuplicateNode(ParseError):
    """A roles file assigned conflicting roles to the same node."""
