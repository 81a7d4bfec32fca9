import logging
import typing

import numpy as np

from condlgm._exceptions import AdaptationError
from condlgm.samplers._normalize_weights import normalize_weights
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._weighted_sample import WeightedSample


EIGENVALUE_FLOOR = 1e-8

logger = logging.getLogger(__name__)


def adapt_moments(samples: typing.Sequence[WeightedSample],
                  previous: ProposalParams) -> ProposalParams:
    """
    Match the location and scale of a new proposal to the self normalized
    weighted mean and covariance of ``samples``. Family and ``nu`` are taken
    from ``previous``.

    The covariance is symmetrized and its eigenvalues are raised to at least
    ``1e-8 * trace / d``. If the trace is zero, the trace of the previous
    scale is used instead.
    :param samples: the weighted samples.
    :param previous: the proposal that is being adapted.
    :return: the adapted ``ProposalParams``.
    """
    log_weights = np.array([sample.log_weight for sample in samples],
                           dtype=float)
    if not len(log_weights) or not np.any(np.isfinite(log_weights)):
        raise AdaptationError('Cannot adapt the proposal: none of the {} '
                              'samples has a finite weight.'
                              .format(len(log_weights)))
    weights = normalize_weights(log_weights)
    points = np.array([sample.z for sample in samples], dtype=float)
    points = points.reshape(len(samples), previous.dim)

    mu = weights @ points
    centered = points - mu
    sigma = (weights[:, None] * centered).T @ centered
    sigma = _repair(sigma, previous.sigma)
    return previous.with_moments(mu, sigma)


def _repair(sigma: np.ndarray, previous: np.ndarray) -> np.ndarray:
    sigma = 0.5 * (sigma + sigma.T)
    dim = sigma.shape[0]
    trace = float(np.trace(sigma))
    if not trace > 0:
        trace = float(np.trace(previous))
        logger.debug('Adapted covariance has zero trace; flooring with the '
                     'previous scale.')
    floor = EIGENVALUE_FLOOR * trace / dim
    eigenvalues, eigenvectors = np.linalg.eigh(sigma)
    if np.min(eigenvalues) >= floor:
        return sigma
    eigenvalues = np.maximum(eigenvalues, floor)
    repaired = (eigenvectors * eigenvalues) @ eigenvectors.T
    return 0.5 * (repaired + repaired.T)
