import numpy as np


class DomainError(ValueError):
    pass


class ModelError(ValueError):
    pass


class SingularInformation(ModelError):
    pass


class NotConverged(ModelError):
    def __init__(self, message: str, fit=None):
        super().__init__(message)
        self.fit = fit


class DomainEscape(ModelError):
    pass


class SingularDesign(ModelError):
    pass


class DimensionMismatch(ModelError):
    pass


class DatasetError(ValueError):
    pass


class MissingColumn(DatasetError):
    def __init__(self, column: str, path: str = ''):
        super().__init__(f'Column "{column}" not found in {path or "the dataset"}')
        self.column = column


class NonNumericCell(DatasetError):
    def __init__(self, row: int, column: str, value: str):
        super().__init__(f'Non-numeric value "{value}" at row {row}, column "{column}"')
        self.row = row
        self.column = column
        self.value = value


class EmptyAfterFiltering(DatasetError):
    pass


class InvalidResponse(DatasetError):
    pass


class FixedDesign:
    """Covariates z_i as columns of a p x n matrix, with responses y_i.

    Column i of ``Z`` is the covariate vector of observation i, including the
    intercept entry when there is one.
    """

    def __init__(self, Z, y, names: list[str] | None = None):
        Z = np.asarray(Z, dtype=float)
        if Z.ndim == 1:
            Z = Z.reshape(1, -1)
        y = np.asarray(y, dtype=float).reshape(-1)
        if Z.ndim != 2:
            raise DimensionMismatch(f'Design must be a p x n matrix, got {Z.ndim} dimensions')
        p, n = Z.shape
        if n != len(y):
            raise DimensionMismatch(f'Design has {n} columns but {len(y)} responses')
        if p < 1 or n < p:
            raise DimensionMismatch(f'Need n >= p >= 1, got p={p}, n={n}')
        if not np.all(np.isfinite(Z)) or not np.all(np.isfinite(y)):
            raise DomainError('Design and responses must be finite')
        self.Z = Z
        self.y = y
        self.dropped_rows = 0
        self.names = list(names) if names else [f'x{j}' for j in range(p)]
        if len(self.names) != p:
            raise DimensionMismatch(f'Got {len(self.names)} names for {p} covariates')

    @property
    def p(self) -> int:
        return self.Z.shape[0]

    @property
    def n(self) -> int:
        return self.Z.shape[1]

    def intercept_row(self) -> int | None:
        """Index of the first all-ones row, if any."""
        for j in range(self.p):
            if np.all(self.Z[j] == 1.0):
                return j
        return None

    def prefix(self, size: int) -> 'FixedDesign':
        return FixedDesign(self.Z[:, :size], self.y[:size], self.names)

    def linear_predictor(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float).reshape(-1)
        if len(theta) != self.p:
            raise DimensionMismatch(f'theta has {len(theta)} entries, design has p={self.p}')
        if not np.all(np.isfinite(theta)):
            raise DomainError(f'theta must be finite, got {theta}')
        return theta @ self.Z
