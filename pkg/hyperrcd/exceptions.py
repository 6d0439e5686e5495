"""Errors raised by the hypergraph, flow and detection routines.

Every user-facing error derives from `HyperRCDError`, which the CLI turns into a
single-line message and a nonzero exit code.
"""


class HyperRCDError(ValueError):
    """Base class for invalid inputs and parameters."""


class DegenerateHyperedge(HyperRCDError):
    """Hyperedge with fewer than two distinct members, or a member out of range."""


class NonPositiveWeight(HyperRCDError):
    """Weight that is zero, negative or not finite."""


class Disconnected(HyperRCDError):
    """Hypergraph with more than one component (isolated vertices included)."""


class AlphaOutOfRange(HyperRCDError):
    pass


class UnbalancedMeasures(HyperRCDError):
    pass


class NonFiniteWeight(HyperRCDError):
    """Raised when the discrete flow diverges."""


class LabelLengthMismatch(HyperRCDError):
    pass


class VertexSetMismatch(HyperRCDError):
    pass


class InfeasibleParams(HyperRCDError):
    pass


class BudgetExceeded(HyperRCDError):
    pass


class ParseError(HyperRCDError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = ''
        if path is not None:
            location = f'{path}:'
        if line is not None:
            location = f'{location}{line}: '
        elif location:
            location = f'{location} '
        super().__init__(f'{location}{message}')


class MeasureError(RuntimeError):
    """A lazy random-walk measure does not sum to one: the incidence is broken."""
