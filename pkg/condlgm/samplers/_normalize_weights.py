import numpy as np

from condlgm._exceptions import EmptyPosteriorError
from condlgm._types import ArrayLike, Vector


def normalize_weights(log_weights: ArrayLike) -> Vector:
    """
    Turn unnormalized log weights into self normalized weights by a max
    shifted exponentiation. ``-inf`` maps to 0.
    :param log_weights: the log weights.
    :return: nonnegative weights that sum to 1.
    """
    log_weights = np.atleast_1d(np.asarray(log_weights, dtype=float))
    finite = np.isfinite(log_weights)
    if np.any(np.isnan(log_weights)) or np.any(log_weights == np.inf):
        raise ValueError('Log weights must be finite or -inf.')
    if not np.any(finite):
        raise EmptyPosteriorError('None of the {} samples has a finite log '
                                  'weight.'.format(len(log_weights)))
    weights = np.zeros(len(log_weights))
    weights[finite] = np.exp(log_weights[finite] - np.max(log_weights[finite]))
    return weights / np.sum(weights)
