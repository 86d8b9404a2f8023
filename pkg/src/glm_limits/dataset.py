import csv
import logging
import math
import numpy as np
from dataclasses import dataclass, field
from enum import Enum
from io import TextIOWrapper
from .base import (
    FixedDesign, DatasetError, MissingColumn, NonNumericCell, EmptyAfterFiltering,
)


__all__ = ['NaPolicy', 'DatasetSpec', 'NA_TOKENS', 'INTERCEPT', 'parse_cell', 'load_csv']
logger = logging.getLogger(__name__)

NA_TOKENS = {'', 'na', 'nan', 'null', 'none'}
INTERCEPT = 'intercept'


class NaPolicy(Enum):
    DROP_ROW = 'drop'
    FAIL = 'fail'


@dataclass
class DatasetSpec:
    path: str
    response_column: str
    covariate_columns: list[str] = field(default_factory=list)
    add_intercept: bool = True
    na_policy: NaPolicy = NaPolicy.DROP_ROW

    def __post_init__(self):
        self.covariate_columns = list(self.covariate_columns)
        self.na_policy = NaPolicy(self.na_policy)
        if self.response_column in self.covariate_columns:
            raise DatasetError(
                f'Response column "{self.response_column}" is also listed as a covariate')
        if len(set(self.covariate_columns)) != len(self.covariate_columns):
            raise DatasetError(f'Duplicate covariate columns in {self.covariate_columns}')
        if not self.covariate_columns and not self.add_intercept:
            raise DatasetError('Need at least one covariate or an intercept')

    @property
    def names(self) -> list[str]:
        return ([INTERCEPT] if self.add_intercept else []) + self.covariate_columns


def parse_cell(value: str, row: int, column: str) -> float:
    """Returns NaN for missing-value tokens, raises NonNumericCell for anything else."""
    if value.lower() in NA_TOKENS:
        return math.nan
    try:
        result = float(value)
    except ValueError:
        raise NonNumericCell(row, column, value)
    if math.isinf(result):
        raise NonNumericCell(row, column, value)
    return result


def load_csv(spec: DatasetSpec) -> FixedDesign:
    """Reads a header-first CSV into a design, one observation per row.

    Rows are numbered from 1 after the header. The design rows follow
    ``spec.names``; the number of rows removed for missing values is kept in
    ``dropped_rows``.
    """
    columns = [spec.response_column] + spec.covariate_columns
    records: list[list[float]] = []
    dropped = 0
    with open(spec.path, 'rb') as f:
        reader = csv.DictReader(TextIOWrapper(f, encoding='utf-8-sig', newline=''))
        try:
            header = [h.strip() for h in reader.fieldnames or []]
            reader.fieldnames = header
            for c in columns:
                if c not in header:
                    raise MissingColumn(c, spec.path)
            for i, row in enumerate(reader, 1):
                values = [parse_cell((row[c] or '').strip(), i, c) for c in columns]
                missing = [c for c, v in zip(columns, values) if math.isnan(v)]
                if missing:
                    if spec.na_policy == NaPolicy.FAIL:
                        raise DatasetError(f'Missing value at row {i}, column "{missing[0]}"')
                    dropped += 1
                    continue
                records.append(values)
        except csv.Error as e:
            raise DatasetError(f'Malformed CSV {spec.path}: {e}')

    if not records:
        raise EmptyAfterFiltering(f'No usable rows in {spec.path} ({dropped} dropped)')
    if dropped:
        logger.info('Dropped %d rows with missing values from %s', dropped, spec.path)

    data = np.array(records, dtype=float)
    rows = [data[:, j] for j in range(1, len(columns))]
    if spec.add_intercept:
        rows.insert(0, np.ones(len(data)))
    if len(data) < len(rows):
        raise EmptyAfterFiltering(
            f'{len(data)} usable rows cannot identify {len(rows)} coefficients')
    design = FixedDesign(np.vstack(rows), data[:, 0], spec.names)
    design.dropped_rows = dropped
    return design
