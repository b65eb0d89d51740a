"""Exception hierarchy for the feedbackgame package.

Two broad categories matter to callers (and to the CLI's exit codes):

* :class:`DomainError` -- the input violated a documented precondition
  (bad graph data, illegal move, malformed parameters, ...).
* :class:`LimitError` -- the input was fine but exceeded a configured
  resource cap (edge limit, memo cap).
"""


class FeedbackGameError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FeedbackGameError):
    """A precondition on the inputs was violated."""


class LimitError(FeedbackGameError):
    """A configured resource limit was exceeded."""


# --- graph construction -------------------------------------------------

class DuplicateVertex(DomainError):
    def __init__(self, name):
        super().__init__(f"duplicate vertex name: {name!r}")
        self.name = name


class UnknownVertex(DomainError):
    def __init__(self, name):
        super().__init__(f"unknown vertex: {name!r}")
        self.name = name


class SelfLoop(DomainError):
    def __init__(self, name):
        super().__init__(f"self-loop on vertex {name!r} is not allowed")
        self.name = name


class DuplicateEdge(DomainError):
    def __init__(self, a, b):
        super().__init__(f"duplicate edge: ({a!r}, {b!r})")
        self.pair = (a, b)


class BadResidue(DomainError):
    def __init__(self, modulus, residue):
        super().__init__(
            f"residue {residue} invalid for modulus {modulus} "
            f"(need modulus >= 1 and 0 <= residue < modulus)"
        )
        self.modulus = modulus
        self.residue = residue


# --- family constructors -------------------------------------------------

class BadParameter(DomainError):
    """A numeric family parameter is out of range."""


class NotATriangle(DomainError):
    """The three named vertices are not pairwise adjacent."""


class NameCollision(DomainError):
    """A vertex name to be added already exists in the graph."""


class MissingEdge(DomainError):
    """The named edge is not present in the graph."""


class NotCommonNeighbor(DomainError):
    """A vertex required to be a common neighbor of the edge ends is not."""


# --- game engine ----------------------------------------------------------

class IsolatedStart(DomainError):
    def __init__(self, name):
        super().__init__(f"start vertex {name!r} has degree 0")
        self.name = name


class IllegalMove(DomainError):
    """The requested move does not use an unused incident edge."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge  # offending (name, name) pair when known


class GameOver(DomainError):
    """The game has already been decided; no further moves accepted."""


# --- kernels ---------------------------------------------------------------

class BadBipartition(DomainError):
    """The requested (S, R) pair does not form a valid bipartition."""


class PreconditionFailed(DomainError):
    """A strategy was requested from a set that is not an even kernel."""


class StrategyBreakdown(FeedbackGameError):
    """The kernel-following strategy found no move back into the set.

    This must never fire when the precondition held; if it does, it is a
    bug witness, not a user error.
    """


class KernelVerificationError(DomainError):
    """A color class that was expected to be an even kernel is not one.

    Raised when the coloring-based rule is applied to a graph that meets
    the checkable hypotheses but is not actually of the structural kind
    the rule is stated for; treated as bad input rather than a bug.
    """


# --- resource limits --------------------------------------------------------

class LimitExceeded(LimitError):
    def __init__(self, message):
        super().__init__(message)


class CapExceeded(LimitError):
    def __init__(self, cap):
        super().__init__(f"solver memo table exceeded configured cap of {cap} entries")
        self.cap = cap
