"""Exception hierarchy shared by every edgeoff module."""


class EdgeOffError(Exception):
    """Base class for all library errors."""


# -- task graph ---------------------------------------------------------------

class GraphError(EdgeOffError, ValueError):
    pass


class CycleError(GraphError):
    pass


class DanglingEdgeError(GraphError):
    pass


class DuplicateIdError(GraphError):
    pass


class UnknownIdError(GraphError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# -- cost model ---------------------------------------------------------------

class ZeroRateError(EdgeOffError, ZeroDivisionError):
    """Data has to cross a link whose rate is zero."""


class IncompletePolicyError(EdgeOffError, ValueError):
    """A policy does not assign exactly one site to every subtask."""


# -- solvers ------------------------------------------------------------------

class InstanceTooLargeError(EdgeOffError, ValueError):
    pass


class InfeasibleError(EdgeOffError):
    """Raised when a solver cannot reach a placement satisfying the utility and budget constraints.

    ``policy`` and ``report`` hold the last state the solver reached, so
    callers can still inspect which constraints were violated; ``iterations``
    is the number of moves made before giving up and ``meta`` any solver
    diagnostics, when the solver records them.
    """

    def __init__(self, message, policy=None, report=None, iterations=None, meta=None):
        super().__init__(message)
        self.policy = policy
        self.report = report
        self.iterations = iterations
        self.meta = meta


# -- configuration ------------------------------------------------------------

class ConfigError(EdgeOffError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(ConfigError, ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
