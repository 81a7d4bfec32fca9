from scipy import sparse

from condlgm._exceptions import InvalidDimensionError
from condlgm.gmrf._sparse_precision import SparsePrecision


RW2_JITTER = 1e-5


def rw2_structure(n: int) -> sparse.csc_matrix:
    """
    Return the structure matrix ``D^T D`` of a second order random walk,
    with ``D`` the ``(n - 2) x n`` second difference operator.
    :param n: the length of the random walk.
    :return: the (singular, rank ``n - 2``) structure matrix.
    """
    if n < 3:
        raise InvalidDimensionError('A second order random walk needs at least '
                                    '3 nodes, got {}.'.format(n))
    second_difference = sparse.diags([1.0, -2.0, 1.0], [0, 1, 2],
                                     shape=(n - 2, n))
    return sparse.csc_matrix(second_difference.T @ second_difference)


def build_rw2_precision(n: int, tau: float,
                        jitter: float = RW2_JITTER) -> SparsePrecision:
    """
    Build the precision ``tau * R`` of a second order random walk of length
    ``n``, which penalizes ``sum((x[i+1] - 2 x[i] + x[i-1]) ** 2)``. The
    structure ``R`` has constants and linear trends in its null space, so a
    diagonal ``jitter`` is attached for factorization.
    :param n: the number of nodes (at least 3).
    :param tau: the (positive) precision of the random walk.
    :param jitter: the diagonal jitter used when factorizing.
    :return: a ``SparsePrecision``.
    """
    if not tau > 0:
        raise ValueError('The random walk precision must be positive, got {}.'
                         .format(tau))
    return SparsePrecision.from_matrix(tau * rw2_structure(n), jitter=jitter)
