import numpy as np

from condlgm._exceptions import UndefinedDiagnosticError
from condlgm._types import ArrayLike


def ess(weights: ArrayLike) -> float:
    """
    The effective sample size ``(sum w)^2 / sum w^2`` of importance weights.
    The weights need not be normalized.
    :param weights: nonnegative weights.
    :return: the effective sample size.
    """
    weights = _nonnegative(weights)
    total = float(np.sum(weights))
    if not total > 0:
        raise UndefinedDiagnosticError('The effective sample size of {} zero '
                                       'weights is undefined.'
                                       .format(len(weights)))
    normalized = weights / total
    return float(1.0 / np.sum(normalized ** 2))


def _nonnegative(weights: ArrayLike) -> np.ndarray:
    weights = np.atleast_1d(np.asarray(weights, dtype=float))
    if np.any(weights < 0) or np.any(~np.isfinite(weights)):
        raise ValueError('Weights must be finite and nonnegative.')
    return weights
