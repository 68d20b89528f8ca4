"""Exception types shared across the toolkit.

Every domain error raised by the library derives from CausalGraphError so
callers (and the CLI) can catch one base class and report the error name.
"""


class CausalGraphError(Exception):
    """Base class for all domain errors raised by this package."""


class DuplicateNameError(CausalGraphError):
    """A variable name was declared more than once."""


class UnknownEndpointError(CausalGraphError):
    """An edge endpoint is not a declared variable name."""


class CycleError(CausalGraphError):
    """The edge relation contains a directed cycle (named in the message)."""


class UnknownVariableError(CausalGraphError):
    """A referenced variable does not exist in the graph or table."""


class OverlappingSetsError(CausalGraphError):
    """Query endpoints coincide or overlap the conditioning set."""


class IncompleteAssignmentError(CausalGraphError):
    """An assignment does not cover every variable of the network."""


class TooLargeError(CausalGraphError):
    """The requested enumeration exceeds the configured size cap."""


class EmptyDatasetError(CausalGraphError):
    """A statistical test was asked to run on zero rows."""


class DegenerateStrataError(CausalGraphError):
    """No conditioning stratum holds any observations."""


class VariableMismatchError(CausalGraphError):
    """Two structures that must share a variable set do not."""


class NotAPolytreeError(CausalGraphError):
    """The network skeleton has an undirected cycle."""


class ImpossibleEvidenceError(CausalGraphError):
    """The observed evidence has probability below the zero threshold."""


class ZeroEvidenceProbabilityError(CausalGraphError):
    """A closed-form posterior was requested for probability-zero evidence."""


class NetworkFormatError(CausalGraphError):
    """A network file is malformed or fails validation on load."""


class DatasetFormatError(CausalGraphError):
    """A dataset file is malformed or uses unknown state names."""
