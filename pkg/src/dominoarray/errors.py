"""Exception hierarchy shared by all modules.

The CLI maps these to distinct exit codes, so raise the most specific
class that applies.
"""


class DominoArrayError(Exception):
    """Base class for all package errors."""


class DomainError(DominoArrayError, ValueError):
    """An argument is outside its documented domain (bad index, bad range)."""


class ConfigurationError(DominoArrayError, ValueError):
    """A configuration value is invalid or inconsistent."""


class UntileableError(DominoArrayError):
    """The requested region admits no perfect domino tiling."""


class StructuralError(DominoArrayError):
    """A tiling / height-field value violates its structural invariants."""


class FormatError(DominoArrayError, ValueError):
    """A data file does not match its documented schema."""


class ResolutionError(DominoArrayError):
    """The sampling lattice is too coarse for the requested measurement."""


class InfeasibleError(DominoArrayError):
    """Synthesis cannot proceed: no admissible candidate exists."""
