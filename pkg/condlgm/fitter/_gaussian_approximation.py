import logging
import typing

import numpy as np
from scipy import sparse

from condlgm._exceptions import ConditionalFitError, FactorizationError
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.fitter._fit_result import GaussianApprox
from condlgm.gmrf._cholesky import cholesky
from condlgm.gmrf._solve_constrained import solve_constrained
from condlgm.gmrf._sparse_precision import SparsePrecision


NEWTON_TOL = 1e-8
MAX_NEWTON_ITERS = 30

logger = logging.getLogger(__name__)


def gaussian_approximation(
        model: ConditionalModel,
        theta: typing.Optional[float] = None,
        newton_tol: float = NEWTON_TOL,
        max_newton_iters: int = MAX_NEWTON_ITERS) -> GaussianApprox:
    """
    Find the mode of the latent field given the hyperparameter by Newton
    iterations and return the Gaussian that matches the mode and the
    curvature at the mode. For a Gaussian likelihood the objective is
    quadratic and one step is exact.

    The gradient tolerance is relative to the scale of the data term
    ``A^T D y``, so it does not depend on the units of the response.
    :param model: the conditional model.
    :param theta: the hyperparameter (log precision); required when the
    model has a free hyperparameter.
    :param newton_tol: the tolerance on the max norm of the gradient.
    :param max_newton_iters: the maximum number of Newton steps.
    :return: a ``GaussianApprox``.
    """
    if model.hyperparameter is not None:
        if theta is None or not np.isfinite(theta):
            raise ValueError('A finite theta is required for the '
                             'hyperparameter {}.'.format(model.hyperparameter))
    theta = 0.0 if theta is None else float(theta)

    projection = model.projection()
    precision_obs = np.exp(model.observation_log_precision(theta))
    y = model.y[model.observed]
    if not np.all(np.isfinite(precision_obs)):
        raise ConditionalFitError('Observation precision overflows at theta '
                                  '{}.'.format(theta))

    prior = model.prior_precision(theta)
    prior_matrix = prior.to_sparse()
    posterior_matrix = (prior_matrix + projection.T
                        @ sparse.diags(precision_obs) @ projection)
    posterior = SparsePrecision.from_matrix(posterior_matrix)
    try:
        factor = cholesky(posterior)
    except FactorizationError as err:
        raise ConditionalFitError('The negative Hessian is not positive '
                                  'definite: {}'.format(err)) from err

    constraint = model.constraint()
    data_term = projection.T @ (precision_obs * y)
    scale = 1.0 + float(np.max(np.abs(data_term), initial=0.0))

    def _gradient(x: np.ndarray) -> np.ndarray:
        gradient = _log_joint_gradient(x, y, projection, precision_obs,
                                       prior_matrix)
        if constraint is not None:
            # Only the part orthogonal to the constraints has to vanish.
            a = constraint.matrix
            gradient = gradient - a.T @ np.linalg.solve(a @ a.T, a @ gradient)
        return gradient

    x = np.zeros(model.latent_dim)
    converged = False
    iterations = 0
    free_mean = None
    while iterations < max_newton_iters:
        rhs = posterior_matrix @ x + _log_joint_gradient(
            x, y, projection, precision_obs, prior_matrix)
        free_mean = factor.solve(rhs)
        x = solve_constrained(factor, rhs, constraint)
        iterations += 1
        if np.max(np.abs(_gradient(x)), initial=0.0) < newton_tol * scale:
            converged = True
            break

    if not converged:
        raise ConditionalFitError('Newton iterations did not converge in {} '
                                  'steps at theta {}.'
                                  .format(max_newton_iters, theta))
    logger.debug('Gaussian approximation at theta %.6g converged in %d '
                 'step(s).', theta, iterations)
    return GaussianApprox(mode=x, precision=posterior, factor=factor,
                          converged=converged, iterations=iterations,
                          theta=theta, free_mean=free_mean)


def _log_joint_gradient(
        x: np.ndarray,
        y: np.ndarray,
        projection: sparse.spmatrix,
        precision_obs: np.ndarray,
        prior_matrix: sparse.spmatrix) -> np.ndarray:
    residual = y - projection @ x
    return projection.T @ (precision_obs * residual) - prior_matrix @ x
