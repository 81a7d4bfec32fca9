import numpy as np
from scipy import stats

from condlgm._exceptions import InvalidDimensionError
from condlgm._types import GAUSSIAN, ArrayLike, Vector
from condlgm.samplers._proposal_params import ProposalParams


def log_proposal_density(p: ProposalParams, z: ArrayLike) -> float:
    """
    Evaluate the log density of the proposal ``p`` at the point ``z``.
    :param p: the proposal.
    :param z: a vector of length ``p.dim``.
    :return: the log density.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if z.shape != (p.dim,):
        raise InvalidDimensionError('Expected a point of length {}, got shape '
                                    '{}.'.format(p.dim, z.shape))
    return float(log_proposal_densities(p, z[None, :])[0])


def log_proposal_densities(p: ProposalParams, points: ArrayLike) -> Vector:
    """
    Evaluate the log density of ``p`` at every row of ``points``.
    """
    points = np.asarray(points, dtype=float).reshape(-1, p.dim)
    if p.family == GAUSSIAN:
        result = stats.multivariate_normal.logpdf(points, mean=p.mu,
                                                  cov=p.sigma)
    else:
        result = stats.multivariate_t.logpdf(points, loc=p.mu, shape=p.sigma,
                                             df=p.nu)
    return np.atleast_1d(np.asarray(result, dtype=float))
