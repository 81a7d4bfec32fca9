import logging
import math
import typing

import numpy as np
from scipy.special import logsumexp

from condlgm._exceptions import ConditionalFitError, FactorizationError
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.fitter._fit_result import GaussianApprox, ThetaGrid
from condlgm.fitter._gaussian_approximation import gaussian_approximation
from condlgm.gmrf._gaussian_logdensity import gaussian_logdensity


_LOG_2PI = math.log(2.0 * math.pi)

logger = logging.getLogger(__name__)


class NodeFit(typing.NamedTuple):
    theta: float
    log_joint: float
    approx: GaussianApprox


def laplace_log_joint(model: ConditionalModel, theta: float,
                      approx: typing.Optional[GaussianApprox] = None) -> float:
    """
    Return ``log pi(y | theta) + log pi(theta)`` by the Laplace formula
    ``pi(y | x, theta) pi(x | theta) pi(theta) / pi_G(x | theta, y)``
    evaluated at the mode ``x = x_0(theta)``. With a constrained field, the
    prior and the Gaussian approximation are both conditioned on the
    constraint.
    :param model: the conditional model.
    :param theta: the hyperparameter (log precision).
    :param approx: the Gaussian approximation at ``theta``, if available.
    :return: the log of the joint density of the data and ``theta``.
    """
    approx = approx or gaussian_approximation(model, theta)
    mode = approx.mode
    constraint = model.constraint()

    log_precision = model.observation_log_precision(theta)
    residual = model.y[model.observed] - model.projection() @ mode
    log_likelihood = float(np.sum(0.5 * log_precision - 0.5 * _LOG_2PI
                                  - 0.5 * np.exp(log_precision) * residual ** 2))

    log_prior = gaussian_logdensity(model.prior_precision(theta),
                                    np.zeros(model.latent_dim), mode,
                                    constraint=constraint)
    log_gaussian = gaussian_logdensity(approx.precision, approx.free_mean,
                                       mode, constraint=constraint,
                                       factor=approx.factor)
    result = (log_likelihood + log_prior + model.log_hyper_prior(theta)
              - log_gaussian)
    if not np.isfinite(result):
        raise ConditionalFitError('Non-finite Laplace evidence at theta {}.'
                                  .format(theta))
    return result


def fit_nodes(model: ConditionalModel,
              grid: ThetaGrid) -> typing.Tuple[typing.List[NodeFit], int]:
    """
    Fit the model at every node of ``grid``. Failed nodes are dropped and
    the weights of the remaining nodes are rescaled to the original total.
    :param model: the conditional model.
    :param grid: the hyperparameter grid.
    :return: the successful node fits and the number of failed nodes.
    """
    fits = []
    for theta, log_weight in zip(grid.nodes, grid.log_weights):
        try:
            approx = gaussian_approximation(model, theta)
            log_joint = laplace_log_joint(model, theta, approx)
        except (ConditionalFitError, FactorizationError,
                np.linalg.LinAlgError) as err:
            logger.debug('Dropping grid node %.6g: %s', theta, err)
            continue
        fits.append((float(theta), log_joint + float(log_weight), approx,
                     float(log_weight)))
    n_failed = len(grid) - len(fits)
    if not fits:
        raise ConditionalFitError('The fit failed at all {} grid nodes.'
                                  .format(len(grid)))
    shift = 0.0
    if n_failed:
        shift = (logsumexp(grid.log_weights)
                 - logsumexp([fit[3] for fit in fits]))
        logger.warning('%d of %d grid nodes failed; weights renormalized.',
                       n_failed, len(grid))
    return [NodeFit(theta, term + shift, approx)
            for theta, term, approx, _ in fits], n_failed


def conditional_log_evidence(model: ConditionalModel,
                             grid: ThetaGrid) -> float:
    """
    Return the conditional log marginal likelihood ``log pi(y | z_c)``: the
    Laplace value of ``pi(y, theta)`` summed over the grid nodes with their
    integration weights, by a max-shifted log-sum-exp.
    :param model: the conditional model.
    :param grid: the hyperparameter grid.
    :return: the log evidence.
    """
    fits, _ = fit_nodes(model, grid)
    return float(logsumexp([fit.log_joint for fit in fits]))
