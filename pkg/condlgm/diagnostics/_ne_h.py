import numpy as np

from condlgm._exceptions import InvalidDimensionError, UndefinedDiagnosticError
from condlgm._types import ArrayLike
from condlgm.diagnostics._ess import _nonnegative


def ne_h(weights: ArrayLike, h_values: ArrayLike) -> float:
    """
    The effective sample size for estimating the mean of ``h``: with
    ``w_i(h) = |h_i| w_i / sum_j |h_j| w_j`` it is ``1 / sum w_i(h)^2``.
    :param weights: nonnegative importance weights.
    :param h_values: ``h`` evaluated at every sample.
    :return: the effective sample size for ``h``.
    """
    weights = _nonnegative(weights)
    h_values = np.atleast_1d(np.asarray(h_values, dtype=float))
    if h_values.shape != weights.shape:
        raise InvalidDimensionError('{} weights for {} values of h.'
                                    .format(len(weights), len(h_values)))
    products = np.abs(h_values) * weights
    total = float(np.sum(products))
    if not total > 0:
        raise UndefinedDiagnosticError('All |h| w are zero; n_e(h) is '
                                       'undefined.')
    products = products / total
    return float(1.0 / np.sum(products ** 2))
