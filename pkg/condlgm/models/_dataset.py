import csv
import typing
from dataclasses import dataclass, field

import numpy as np

from condlgm._exceptions import DataError


MISSING = 'NA'


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Named numeric columns of equal length; missing values are ``nan``.
    Synthetic datasets keep the values they were generated from in
    ``truth``; those are never written.
    """
    columns: typing.Dict[str, np.ndarray]
    truth: typing.Dict[str, typing.Any] = field(default_factory=dict)

    def __post_init__(self):
        columns = {name: np.asarray(values, dtype=float).ravel()
                   for name, values in self.columns.items()}
        lengths = {len(values) for values in columns.values()}
        if len(lengths) > 1:
            raise DataError('Columns have unequal lengths: {}.'
                            .format(sorted(lengths)))
        object.__setattr__(self, 'columns', columns)

    @property
    def names(self) -> typing.Tuple[str, ...]:
        return tuple(self.columns)

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def __getitem__(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise DataError('The dataset has no column {}; it has {}.'
                            .format(name, list(self.columns))) from None

    def require(self, *names: str) -> None:
        missing = [name for name in names if name not in self.columns]
        if missing:
            raise DataError('Missing column(s) {}; the dataset has {}.'
                            .format(missing, list(self.columns)))

    def missing_mask(self, name: str) -> np.ndarray:
        return np.isnan(self[name])

    def write_csv(self, path: str) -> None:
        """
        Write the columns with a header row, 17 significant digits and
        ``NA`` for missing values.
        """
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(self.names)
            for row in zip(*self.columns.values()):
                writer.writerow([format_float(value) for value in row])


def format_float(value: float) -> str:
    if np.isnan(value):
        return MISSING
    return '{:.17g}'.format(value)
