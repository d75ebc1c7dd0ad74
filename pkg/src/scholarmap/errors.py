"""Exception types shared across the pipeline."""


class ScholarMapError(Exception):
    """Base class for all scholarmap errors."""


class SchemaError(ScholarMapError):
    """The CSV header is missing required columns."""

    def __init__(self, missing_columns):
        self.missing_columns = list(missing_columns)
        super().__init__(f"missing required columns: {', '.join(self.missing_columns)}")


class RowError(ScholarMapError):
    """A data row could not be parsed. Row indices are 1-based over data rows."""

    def __init__(self, row, field, message):
        self.row = row
        self.field = field
        super().__init__(f"row {row}, field {field!r}: {message}")


class DuplicateIdError(ScholarMapError):
    def __init__(self, researcher_id):
        self.researcher_id = researcher_id
        super().__init__(f"duplicate researcher id: {researcher_id!r}")


class EmptyCorpusError(ScholarMapError):
    """Every document in the corpus is empty, no vocabulary can be built."""


class DegenerateDataError(ScholarMapError):
    """All data points are identical; PCA directions are undefined."""


class DimensionMismatchError(ScholarMapError):
    pass


class InvalidKError(ScholarMapError):
    def __init__(self, k, n):
        self.k = k
        self.n = n
        super().__init__(f"k={k} out of range [1, {n}]")


class NotSpdError(ScholarMapError):
    """Covariance matrix is not symmetric positive-definite."""


class EmptyQueryError(ScholarMapError):
    """No query token survives normalization or matches the vocabulary."""
