"""Exception hierarchy.  The CLI maps each family to its own exit status."""


class SeasError(Exception):
    """Base class for all seaskit errors."""


class ParseError(SeasError, ValueError):
    """Malformed textual input.  ``row``/``column`` are 1-based when known."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ShapeError(ParseError):
    """Ragged or empty matrix input."""


class EncodingOverflowError(SeasError, ValueError):
    """A design-vector code does not fit in ``n_runs`` bits."""

    def __init__(self, column, code, n_runs):
        self.column = column
        self.code = code
        self.n_runs = n_runs
        super().__init__(
            f"code {code} in column {column + 1} does not fit in {n_runs} bits"
        )


class ValidationError(SeasError, ValueError):
    """Structurally invalid design or argument."""


class UnavailableRangeError(SeasError, LookupError):
    """A subset size beyond the spectrum's k_max was requested."""


class ResourceError(SeasError, MemoryError):
    """The requested computation would not fit in memory."""


class ComparisonError(SeasError, ValueError):
    """Designs or patterns that cannot be compared."""


class InconsistencyError(SeasError, RuntimeError):
    """Two computations that must agree did not (an implementation bug)."""
