import numpy as np

from condlgm._types import ArrayLike, Vector
from condlgm.diagnostics._ess import _nonnegative, ess


def running_ess(weights: ArrayLike) -> Vector:
    """
    The effective sample size of the first ``k`` weights, for every ``k``.
    Prefixes without any positive weight get 0. The last value is
    exactly ``ess(weights)``.
    :param weights: nonnegative weights in draw order.
    :return: a vector of the same length.
    """
    weights = _nonnegative(weights)
    if not len(weights):
        raise ValueError('Running ESS needs at least one weight.')
    totals = np.cumsum(weights)
    squares = np.cumsum(weights ** 2)
    result = np.zeros(len(weights))
    positive = squares > 0
    result[positive] = totals[positive] ** 2 / squares[positive]
    # The full set agrees with ess() to the last bit.
    if positive[-1]:
        result[-1] = ess(weights)
    return result
