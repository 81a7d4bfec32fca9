import typing
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from condlgm._exceptions import InvalidDimensionError
from condlgm._types import ArrayLike, Matrix, Vector


@dataclass(frozen=True, eq=False)
class SparsePrecision:
    """
    A symmetric sparse precision matrix of which only the lower triangle is
    stored, as coalesced (row, col, value) entries sorted by column and row.
    The ``jitter`` is added to the diagonal when the matrix is factorized,
    which makes intrinsic (rank deficient) precisions usable.
    """
    dim: int
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    jitter: float = 0.0

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidDimensionError('A precision needs dim >= 1, got {}.'
                                        .format(self.dim))
        if not (len(self.rows) == len(self.cols) == len(self.values)):
            raise InvalidDimensionError('Entry arrays must have equal length.')
        if self.jitter < 0:
            raise ValueError('Jitter must be nonnegative, got {}.'
                             .format(self.jitter))
        if len(self.rows):
            if np.any(self.rows < self.cols):
                raise ValueError('Only lower triangular entries are stored.')
            if (self.rows.min() < 0 or self.cols.min() < 0
                    or self.rows.max() >= self.dim):
                raise InvalidDimensionError('Entry index out of range for dim '
                                            '{}.'.format(self.dim))
            keys = self.cols * self.dim + self.rows
            if np.any(np.diff(keys) <= 0):
                raise ValueError('Entries must be sorted and free of '
                                 'duplicates.')
        diagonal = self.diagonal(jittered=True)
        if np.any(diagonal <= 0):
            index = int(np.flatnonzero(diagonal <= 0)[0])
            raise ValueError('Diagonal entry {} is not positive after jitter.'
                             .format(index))

    @classmethod
    def from_entries(
            cls,
            dim: int,
            entries: typing.Iterable[typing.Tuple[int, int, float]],
            jitter: float = 0.0) -> 'SparsePrecision':
        """
        Create a ``SparsePrecision`` from (row, col, value) triples. Entries
        above the diagonal are mirrored into the lower triangle and duplicate
        positions are summed.
        :param dim: the dimension of the matrix.
        :param entries: an iterable of (row, col, value).
        :param jitter: the diagonal jitter used when factorizing.
        :return: a ``SparsePrecision``.
        """
        entries = list(entries)
        rows = np.array([max(r, c) for r, c, _ in entries], dtype=np.int64)
        cols = np.array([min(r, c) for r, c, _ in entries], dtype=np.int64)
        values = np.array([v for _, _, v in entries], dtype=float)
        if len(entries) and (rows.max() >= dim or cols.min() < 0):
            raise InvalidDimensionError('Entry index out of range for dim {}.'
                                        .format(dim))
        coo = sparse.coo_matrix((values, (rows, cols)), shape=(dim, dim))
        return cls._from_lower(coo, jitter)

    @classmethod
    def from_matrix(cls, matrix: typing.Any,
                    jitter: float = 0.0) -> 'SparsePrecision':
        """
        Create a ``SparsePrecision`` from a dense array or a scipy sparse
        matrix. The matrix is assumed to be symmetric: only its lower
        triangle is read.
        :param matrix: a square matrix.
        :param jitter: the diagonal jitter used when factorizing.
        :return: a ``SparsePrecision``.
        """
        if sparse.issparse(matrix):
            matrix = sparse.coo_matrix(matrix)
        else:
            matrix = sparse.coo_matrix(np.atleast_2d(np.asarray(matrix,
                                                                dtype=float)))
        if matrix.shape[0] != matrix.shape[1]:
            raise InvalidDimensionError('A precision must be square, got {}.'
                                        .format(matrix.shape))
        return cls._from_lower(sparse.tril(matrix), jitter)

    @classmethod
    def _from_lower(cls, lower: sparse.spmatrix,
                    jitter: float) -> 'SparsePrecision':
        csc = sparse.csc_matrix(lower)
        csc.sum_duplicates()
        csc.eliminate_zeros()
        csc.sort_indices()
        coo = csc.tocoo()
        # tocoo keeps the column-major order of csc.
        return cls(dim=csc.shape[0],
                   rows=coo.row.astype(np.int64),
                   cols=coo.col.astype(np.int64),
                   values=coo.data.astype(float),
                   jitter=float(jitter))

    @property
    def entries(self) -> typing.List[typing.Tuple[int, int, float]]:
        return [(int(r), int(c), float(v))
                for r, c, v in zip(self.rows, self.cols, self.values)]

    @property
    def bandwidth(self) -> int:
        """
        The largest distance of a stored entry from the diagonal.
        """
        if not len(self.rows):
            return 0
        return int(np.max(self.rows - self.cols))

    def diagonal(self, jittered: bool = False) -> Vector:
        result = np.zeros(self.dim)
        on_diagonal = self.rows == self.cols
        result[self.rows[on_diagonal]] = self.values[on_diagonal]
        if jittered:
            result = result + self.jitter
        return result

    def to_sparse(self, jittered: bool = False) -> sparse.csc_matrix:
        """
        Return the full symmetric matrix as a scipy ``csc_matrix``.
        :param jittered: if ``True``, the jitter is added to the diagonal.
        :return: the reconstructed matrix.
        """
        lower = sparse.coo_matrix((self.values, (self.rows, self.cols)),
                                  shape=(self.dim, self.dim))
        strict = sparse.tril(lower, k=-1)
        result = lower + strict.T
        if jittered and self.jitter:
            result = result + self.jitter * sparse.identity(self.dim)
        return sparse.csc_matrix(result)

    def to_dense(self, jittered: bool = False) -> Matrix:
        return self.to_sparse(jittered).toarray()

    def dot(self, x: ArrayLike, jittered: bool = False) -> np.ndarray:
        return self.to_sparse(jittered) @ np.asarray(x, dtype=float)

    def quadratic_form(self, x: ArrayLike, jittered: bool = False) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise InvalidDimensionError('Expected a vector of length {}, got '
                                        'shape {}.'.format(self.dim, x.shape))
        return float(x @ self.dot(x, jittered))

    def scaled(self, factor: float) -> 'SparsePrecision':
        return SparsePrecision(self.dim, self.rows, self.cols,
                               self.values * factor, self.jitter)

    def with_jitter(self, jitter: float) -> 'SparsePrecision':
        return SparsePrecision(self.dim, self.rows, self.cols, self.values,
                               float(jitter))


@dataclass(frozen=True, eq=False)
class CholeskyFactor:
    """
    The lower triangular factor ``L`` of ``Q + jitter * I = L L^T``, kept in
    LAPACK's lower banded storage. When a ``permutation`` ``p`` is present,
    the factorized matrix is ``Q[p][:, p]``.
    """
    banded: np.ndarray
    log_det: float
    jitter: float = 0.0
    permutation: typing.Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return self.banded.shape[1]

    @property
    def bandwidth(self) -> int:
        return self.banded.shape[0] - 1

    @property
    def lower(self) -> sparse.csc_matrix:
        """
        The factor ``L`` as a sparse lower triangular matrix.
        """
        n = self.dim
        diagonals = [self.banded[k, :n - k] for k in range(self.bandwidth + 1)]
        offsets = [-k for k in range(self.bandwidth + 1)]
        return sparse.diags(diagonals, offsets, shape=(n, n), format='csc')

    def solve(self, b: ArrayLike) -> np.ndarray:
        """
        Solve ``(Q + jitter * I) x = b`` by a forward and a backward solve.
        :param b: a vector of length ``dim`` or a matrix with ``dim`` rows.
        :return: the solution ``x`` with the shape of ``b``.
        """
        from scipy.linalg import cho_solve_banded

        b = np.asarray(b, dtype=float)
        if b.shape[0] != self.dim:
            raise InvalidDimensionError('Expected {} rows, got {}.'
                                        .format(self.dim, b.shape[0]))
        if self.permutation is None:
            return cho_solve_banded((self.banded, True), b)
        solution = cho_solve_banded((self.banded, True), b[self.permutation])
        result = np.empty_like(solution)
        result[self.permutation] = solution
        return result


@dataclass(frozen=True, eq=False)
class LinearConstraint:
    """
    A set of hard linear constraints ``A x = e``. For sum-to-zero
    constraints, ``e`` is all zeros.
    """
    matrix: np.ndarray
    rhs: np.ndarray = field(default=None)

    def __post_init__(self):
        matrix = np.atleast_2d(np.asarray(self.matrix, dtype=float))
        object.__setattr__(self, 'matrix', matrix)
        rhs = (np.zeros(matrix.shape[0]) if self.rhs is None
               else np.atleast_1d(np.asarray(self.rhs, dtype=float)))
        if rhs.shape != (matrix.shape[0],):
            raise InvalidDimensionError('The rhs needs {} entries, got {}.'
                                        .format(matrix.shape[0], rhs.shape))
        object.__setattr__(self, 'rhs', rhs)

    @classmethod
    def empty(cls, dim: int) -> 'LinearConstraint':
        return cls(np.zeros((0, dim)), np.zeros(0))

    @classmethod
    def sum_to_zero(cls, size: int, offset: int = 0,
                    dim: typing.Optional[int] = None) -> 'LinearConstraint':
        """
        Create the constraint that entries ``offset .. offset + size - 1`` of
        a vector of length ``dim`` sum to zero.
        :param size: the number of constrained entries.
        :param offset: the index of the first constrained entry.
        :param dim: the total length; defaults to ``offset + size``.
        :return: a ``LinearConstraint`` with a single row.
        """
        dim = offset + size if dim is None else dim
        matrix = np.zeros((1, dim))
        matrix[0, offset:offset + size] = 1.0
        return cls(matrix)

    @property
    def n_constraints(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def residual(self, x: ArrayLike) -> Vector:
        return self.matrix @ np.asarray(x, dtype=float) - self.rhs
