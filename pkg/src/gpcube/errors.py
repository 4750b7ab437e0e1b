"""Exception types shared across the package."""


class GpCubeError(Exception):
    """Base class for all package errors."""


class PreconditionError(GpCubeError, ValueError):
    """An argument falls outside the documented domain of an operation."""


class GraphFormatError(GpCubeError):
    """Malformed graph or edge-set file.

    ``line`` is the 1-based line number when the problem can be pinned to one.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(GpCubeError):
    def __init__(self, u, v):
        self.u, self.v = u, v
        super().__init__(f"graph is disconnected: no path between vertices {u} and {v}")


class NotPartialCubeError(GpCubeError):
    pass


class IsometryError(GpCubeError):
    def __init__(self, u, v, d_sub, d_host):
        self.pair = (u, v)
        super().__init__(
            f"subgraph is not isometric: d_H({u},{v})={d_sub} but d_G({u},{v})={d_host}"
        )


class SolverLimitError(GpCubeError):
    pass


class InternalConsistencyError(GpCubeError, AssertionError):
    """Two independent computations disagree; always a bug."""
