import logging
import typing

import numpy as np
from scipy.linalg import lapack

from condlgm._exceptions import FactorizationError, InvalidDimensionError
from condlgm.gmrf._sparse_precision import CholeskyFactor, SparsePrecision


logger = logging.getLogger(__name__)


def cholesky(
        q: SparsePrecision,
        permutation: typing.Optional[typing.Sequence[int]] = None
) -> CholeskyFactor:
    """
    Factorize ``Q + jitter * I = L L^T`` with a banded Cholesky
    decomposition. The natural ordering is used unless a ``permutation`` is
    given; all shipped models have banded (or arrow shaped) precisions.
    :param q: the precision to factorize.
    :param permutation: an optional fill reducing ordering ``p``; the matrix
    ``Q[p][:, p]`` is factorized.
    :return: a ``CholeskyFactor`` carrying the log determinant.
    """
    rows, cols = q.rows, q.cols
    perm = None
    if permutation is not None:
        perm = np.asarray(permutation, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(q.dim)):
            raise InvalidDimensionError('Not a permutation of 0..{}.'
                                        .format(q.dim - 1))
        inverse = np.empty_like(perm)
        inverse[perm] = np.arange(q.dim)
        rows, cols = inverse[rows], inverse[cols]
        rows, cols = np.maximum(rows, cols), np.minimum(rows, cols)

    bandwidth = int(np.max(rows - cols)) if len(rows) else 0
    banded = np.zeros((bandwidth + 1, q.dim))
    banded[rows - cols, cols] = q.values
    banded[0, :] += q.jitter

    factor, info = lapack.dpbtrf(banded, lower=1)
    if info > 0:
        # LAPACK reports the order of the failing leading minor.
        raise FactorizationError(info - 1, 'Non-positive pivot at index {} '
                                 '(jitter {}).'.format(info - 1, q.jitter))
    if info < 0:
        raise FactorizationError(-1, 'Illegal banded input (LAPACK info {}).'
                                 .format(info))
    log_det = 2.0 * float(np.sum(np.log(factor[0, :])))
    logger.debug('Factorized a %d x %d precision with bandwidth %d.',
                 q.dim, q.dim, bandwidth)
    return CholeskyFactor(banded=factor, log_det=log_det, jitter=q.jitter,
                          permutation=perm)
