"""Exception types shared by the library and the command line."""


class QuadintError(Exception):
    """Base class for library errors."""


class ParseError(QuadintError):
    """Malformed input document or polynomial text."""


class UnsupportedCaseError(QuadintError):
    """Input outside the supported configurations (e.g. two planes in z)."""


class InconsistencyError(QuadintError):
    """An internal self-check failed."""


class BranchCountError(InconsistencyError):
    """Number of curve branches changed inside a sampling interval."""
