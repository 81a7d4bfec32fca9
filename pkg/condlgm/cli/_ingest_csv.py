import csv
import logging
import math
import typing

import numpy as np

from condlgm._exceptions import DataError
from condlgm.models._dataset import MISSING, Dataset


logger = logging.getLogger(__name__)


def ingest_csv(path: str,
               schema: typing.Optional[typing.Sequence[str]] = None
               ) -> Dataset:
    """
    Read a numeric CSV file with a header row. ``NA`` and empty cells are
    missing values.
    :param path: the UTF-8 encoded file.
    :param schema: the column names that must be present.
    :return: a ``Dataset``.
    """
    try:
        with open(path, 'r', encoding='utf-8', newline='') as f:
            rows = list(csv.reader(f))
    except UnicodeDecodeError as err:
        raise DataError('{} is not UTF-8 encoded: {}.'.format(path, err)) \
            from None
    except csv.Error as err:
        raise DataError('{} is not a valid CSV file: {}'.format(path, err)) \
            from None
    rows = [row for row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise DataError('{} is empty; expected a header row.'.format(path))

    header = [name.strip() for name in rows[0]]
    duplicates = sorted({name for name in header if header.count(name) > 1})
    if duplicates:
        raise DataError('{} has duplicate column(s) {}.'
                        .format(path, duplicates))
    if not all(header):
        raise DataError('{} has an empty column name.'.format(path))
    body = rows[1:]
    if not body:
        raise DataError('{} has a header but no data rows.'.format(path))

    values = np.empty((len(body), len(header)))
    for row_number, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise DataError('{} row {}: expected {} cells, got {}.'
                            .format(path, row_number, len(header), len(row)))
        for k, cell in enumerate(row):
            values[row_number - 2, k] = _parse_cell(cell, path, row_number,
                                                    header[k])

    dataset = Dataset({name: values[:, k] for k, name in enumerate(header)})
    if schema:
        dataset.require(*schema)
    logger.info('Read %d rows and %d columns from %s.', dataset.n_rows,
                len(header), path)
    return dataset


def _parse_cell(cell: str, path: str, row: int, column: str) -> float:
    cell = cell.strip()
    if cell in ('', MISSING):
        return math.nan
    try:
        value = float(cell)
    except ValueError:
        raise DataError('{} row {}, column {}: {!r} is not a number.'
                        .format(path, row, column, cell)) from None
    if not math.isfinite(value):
        raise DataError('{} row {}, column {}: {!r} is not finite; use {} for '
                        'a missing value.'.format(path, row, column, cell,
                                                   MISSING))
    return value
