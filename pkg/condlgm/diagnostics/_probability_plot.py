import typing

import numpy as np

from condlgm._exceptions import InvalidDimensionError
from condlgm._types import ArrayLike, Matrix, Vector
from condlgm.diagnostics._ess import _nonnegative


def weighted_ecdf(z_values: ArrayLike,
                  weights: ArrayLike) -> typing.Tuple[Vector, Vector]:
    """
    The weighted empirical distribution function of ``z_values``. Ties keep
    their draw order.
    :param z_values: the sampled values.
    :param weights: nonnegative weights.
    :return: the sorted values and the cumulative normalized weights.
    """
    z_values = np.atleast_1d(np.asarray(z_values, dtype=float))
    weights = _nonnegative(weights)
    if z_values.shape != weights.shape:
        raise InvalidDimensionError('{} values for {} weights.'
                                    .format(len(z_values), len(weights)))
    order = np.argsort(z_values, kind='stable')
    cumulative = np.cumsum(weights[order])
    if cumulative[-1] > 0:
        cumulative = cumulative / cumulative[-1]
    return z_values[order], cumulative


def probability_plot(z_values: ArrayLike, weights: ArrayLike) -> Matrix:
    """
    The points of a probability plot: the cumulative sum of the weights,
    reordered by ascending ``z``, against the uniform ranks ``l / n``. A
    perfect weighting puts every point on the identity line.
    :param z_values: the sampled values of one parameter.
    :param weights: the normalized weights.
    :return: an ``(n, 2)`` array of (empirical, theoretical) pairs.
    """
    _, cumulative = weighted_ecdf(z_values, weights)
    n = len(cumulative)
    theoretical = np.arange(1, n + 1) / n
    return np.column_stack([cumulative, theoretical])
