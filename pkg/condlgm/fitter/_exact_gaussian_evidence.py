import typing

import numpy as np
from scipy import stats

from condlgm._exceptions import UnsupportedModelError
from condlgm._types import GAUSSIAN
from condlgm.fitter._conditional_model import ConditionalModel


def exact_gaussian_evidence(model: ConditionalModel,
                            theta: typing.Optional[float] = None) -> float:
    """
    Return the closed form log marginal likelihood of a linear Gaussian
    model: ``y ~ N(0, A Sigma A^T + D^-1)`` with ``Sigma`` the prior
    covariance of the latent field (conditioned on its constraint, if any).

    When the model has a free hyperparameter, ``log pi(theta)`` is added so
    that the value is comparable with a single node Laplace evidence.
    :param model: a model of the gaussian family.
    :param theta: the hyperparameter (log precision), if the model has one.
    :return: the log evidence.
    """
    if model.family != GAUSSIAN:
        raise UnsupportedModelError('The closed form evidence needs the {} '
                                    'family, got {}.'.format(GAUSSIAN,
                                                             model.family))
    if model.hyperparameter is not None and theta is None:
        raise ValueError('A theta is required for the hyperparameter {}.'
                         .format(model.hyperparameter))
    theta = 0.0 if theta is None else float(theta)

    covariance = np.linalg.inv(model.prior_precision(theta).to_dense(True))
    constraint = model.constraint()
    if constraint is not None:
        a = constraint.matrix
        v = covariance @ a.T
        covariance = covariance - v @ np.linalg.solve(a @ v, v.T)

    projection = model.projection().toarray()
    noise = np.exp(-model.observation_log_precision(theta))
    covariance_y = projection @ covariance @ projection.T + np.diag(noise)
    covariance_y = 0.5 * (covariance_y + covariance_y.T)
    y = model.y[model.observed]
    log_evidence = stats.multivariate_normal.logpdf(
        y, mean=np.zeros(len(y)), cov=covariance_y)
    return float(log_evidence) + model.log_hyper_prior(theta)
