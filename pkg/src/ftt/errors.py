"""Exception hierarchy for ftt.

Every error raised on bad user input derives from ``FttError`` (itself a
``ValueError``), so callers can catch one type; the CLI maps it to exit
code 2.
"""


class FttError(ValueError):
    pass


class ShapeError(FttError):
    """Shape vector is malformed or disagrees with the index-array width."""


class IndexBoundsError(FttError):
    """An index entry lies outside ``[0, shape[k])``."""


class DataLengthError(FttError):
    """Data vector length differs from the index-array row count."""


class NotCanonicalError(FttError):
    """Operation requires a canonical (strictly ordered, unique) tensor."""


class PermutationError(FttError):
    pass


class AxisGroupError(FttError):
    """Axis groups overlap or fail to cover every column."""


class DomainsError(FttError):
    pass


class OrderError(FttError):
    """Input rows are not in the required lexicographic order."""


class SubscriptError(FttError):
    """Malformed or unsupported einsum-style subscript string."""


class ExtentMismatchError(FttError):
    """A label is bound to different extents in the two operands."""


class OracleGuardError(FttError):
    """The brute-force oracle refused an input that is too large."""


class ConfigError(FttError):
    pass
