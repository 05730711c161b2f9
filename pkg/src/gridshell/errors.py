"""Exception hierarchy.

Input problems derive from :class:`GridError`, resource limits from
:class:`CapExceeded`; the CLI maps these onto exit codes 1 and 2.
"""


class GridshellError(Exception):
    pass


class GridError(GridshellError, ValueError):
    """A grid file or diagram failed validation."""


class NonSquare(GridError):
    pass


class BadCharacter(GridError):
    pass


class NotPermutation(GridError):
    pass


class SharedCell(GridError):
    pass


class MultiComponent(GridError):
    pass


class IndexTooSmall(GridError):
    pass


class CapExceeded(GridshellError):
    """A configured size limit (grid index, interval length, chain budget) was hit."""


class EmptyInterval(GridshellError, ValueError):
    pass


class NotPositive(GridshellError, ValueError):
    pass


class InternalContradiction(GridshellError, RuntimeError):
    """Raised when a step that is guaranteed to succeed does not; always a bug."""


class NotAComplex(GridshellError, ValueError):
    pass


class NotGraded(GridshellError, ValueError):
    pass


class NotPure(GridshellError, ValueError):
    pass
