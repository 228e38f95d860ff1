"""Exception types raised across the package."""


class CycleLabelsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidWalk(CycleLabelsError):
    """A walk breaks incidence or references an unknown edge."""


class NotACycle(CycleLabelsError):
    """An operation expected a cycle and got something else."""


class TargetNotOnPath(CycleLabelsError):
    """A path never meets the requested target set."""


class Disconnected(CycleLabelsError):
    """The graph (or relevant part of it) is not connected."""


class NotSpanningTree(CycleLabelsError):
    """The given edge set is not a spanning tree of the graph."""


class NoPath(CycleLabelsError):
    """No path exists between the requested endpoints."""


class SameVertex(CycleLabelsError):
    """The two endpoints of a query coincide."""


class NotEnoughPaths(CycleLabelsError):
    """The requested number of disjoint paths does not exist.

    Signals a violated connectivity precondition.  ``found`` is the number
    of paths that do exist and ``cut_vertices`` the separating vertices of
    the final blocking cut.
    """

    def __init__(self, message, found=0, cut_vertices=()):
        super().__init__(message)
        self.found = found
        self.cut_vertices = tuple(cut_vertices)


class NotBiconnected(CycleLabelsError):
    """The graph is not biconnected."""


class TooSmall(CycleLabelsError):
    """The graph is too small for the requested decomposition."""


class NotQNode(CycleLabelsError):
    """A node id passed as a Q-node is not one."""


class WitnessValidationFailed(CycleLabelsError):
    """An internally assembled witness failed validation."""


class CaseExhaustion(CycleLabelsError):
    """The triconnected case machine ran out of cases (internal bug)."""


class NoCommonBlock(CycleLabelsError):
    """No single block contains both query targets, so no cycle exists."""


class InvalidQuery(CycleLabelsError):
    """A query references out-of-range ids or violates distinctness."""


class ParseError(CycleLabelsError):
    """A graph file could not be parsed; carries line and column."""

    def __init__(self, message, line, column=0):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.column = column
