"""Exception types shared across the toolkit.

Every error the pipeline can raise deliberately derives from
:class:`ForensicsError` so callers (notably the CLI) can catch one base
class and emit a machine-readable report.
"""


class ForensicsError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(ForensicsError):
    """A tunable, window, or schema setting is invalid."""


class MissingInputError(ForensicsError):
    """An input file does not exist."""


class SchemaBindingError(ConfigurationError):
    """The CSV header lacks a column the schema map binds."""


class EmptyCorpusError(ForensicsError):
    """Parsing retained zero rows."""


class UnknownUserError(ForensicsError):
    """A requested user key is not present in the corpus."""


class DegenerateFitError(ForensicsError):
    """Zero-variance counts: the moment fit has no spread to model."""


class UndefinedAcfError(ForensicsError):
    """Autocorrelation is undefined for a constant series."""


class ZeroSpectrumError(ForensicsError):
    """Cosine similarity is undefined against an all-zero spectrum."""


class EmptyGraphError(ForensicsError):
    """The graph has no edge weight to cluster."""


class InsufficientDataError(ForensicsError):
    """Not enough data to run the requested operation."""
