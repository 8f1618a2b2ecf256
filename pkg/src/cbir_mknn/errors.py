"""Exception hierarchy for the retrieval engine.

Everything raised deliberately by this package derives from CbirError, so
callers (and the CLI) can distinguish expected failures from bugs.
"""


class CbirError(Exception):
    """Base class for all errors raised by this package."""


class DecodeError(CbirError):
    """An image file could not be decoded, or decodes to zero pixels."""


class DimensionMismatchError(CbirError):
    """Two feature vectors of different lengths were compared."""


class UndefinedMeasureError(CbirError):
    """A retrieval measure has a zero denominator for this query."""


class InputError(CbirError):
    """Invalid data was passed to an operation."""


class ConfigurationError(InputError):
    """Parameters are incompatible with the data (k or h too large, ...)."""


class StateError(CbirError):
    """An operation was called out of order (e.g. classify before validate)."""


class LabelMapError(CbirError):
    """A label-map file is malformed."""


class IndexFormatError(CbirError):
    """An index file is malformed or truncated."""


class IndexVersionError(IndexFormatError):
    """An index file was written with an unsupported format version."""


class IndexDimensionError(IndexFormatError):
    """An entry's vector length disagrees with the index header."""
