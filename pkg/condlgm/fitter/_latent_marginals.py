import logging
import typing

import numpy as np
from scipy import stats
from scipy.special import logsumexp

from condlgm.fitter._conditional_log_evidence import NodeFit, fit_nodes
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.fitter._fit_result import (
    MARGINAL_GRID_POINTS,
    MARGINAL_GRID_SDS,
    FitResult,
    MarginalGrid,
    SmoothSummary,
    ThetaGrid,
)
from condlgm.gmrf._solve_constrained import kriging_terms


logger = logging.getLogger(__name__)


def latent_marginals(model: ConditionalModel, grid: ThetaGrid) -> FitResult:
    """
    Fit ``model`` at every node of ``grid`` and mix the Gaussian
    approximations into the conditional posterior marginals of the latent
    field. The mixture weights are the normalized values of
    ``pi(y, theta_g) Delta_g``.
    :param model: the conditional model.
    :param grid: the hyperparameter grid.
    :return: a ``FitResult`` with the log evidence and all marginals.
    """
    fits, n_failed = fit_nodes(model, grid)
    log_joints = np.array([fit.log_joint for fit in fits])
    log_evidence = float(logsumexp(log_joints))
    weights = np.exp(log_joints - log_evidence)

    moments = [_latent_moments(model, fit) for fit in fits]
    means = np.array([mean for mean, _ in moments])
    sds = np.array([sd for _, sd in moments])

    marginals = {}
    summary_means = {}
    for k, name in enumerate(model.fixed_names):
        marginals[name] = _gaussian_mixture(means[:, k], sds[:, k], weights)
        summary_means[name] = float(weights @ means[:, k])

    smooth = None
    if model.smooth is not None:
        block = model.smooth_slice
        smooth_mean = weights @ means[:, block]
        second = weights @ (sds[:, block] ** 2 + means[:, block] ** 2)
        locations = model.smooth.locations
        if locations is None:
            locations = np.arange(model.smooth.n_nodes, dtype=float)
        smooth = SmoothSummary(
            name=model.smooth.name,
            locations=locations,
            means=smooth_mean,
            sds=np.sqrt(np.maximum(second - smooth_mean ** 2, 0.0)))

    hyper_marginal = _hyper_marginal(fits, weights, grid)
    if hyper_marginal is not None:
        marginals[model.hyperparameter] = hyper_marginal
        summary_means[model.hyperparameter] = hyper_marginal.mean()

    degraded = grid.degraded or n_failed > 0
    if degraded:
        logger.debug('Degraded fit: %d failed node(s), degraded grid: %s.',
                     n_failed, grid.degraded)
    return FitResult(log_evidence=log_evidence,
                     marginals=marginals,
                     hyper_marginal=hyper_marginal,
                     smooth=smooth,
                     theta_grid=grid,
                     degraded=degraded,
                     n_failed_nodes=n_failed,
                     means=summary_means)


def _latent_moments(
        model: ConditionalModel,
        fit: NodeFit) -> typing.Tuple[np.ndarray, np.ndarray]:
    approx = fit.approx
    covariance = approx.factor.solve(np.eye(model.latent_dim))
    constraint = model.constraint()
    if constraint is not None:
        v, w = kriging_terms(approx.factor, constraint)
        covariance = covariance - v @ np.linalg.solve(w, v.T)
    variance = np.maximum(np.diag(covariance), 0.0)
    return approx.mode, np.sqrt(variance)


def _gaussian_mixture(means: np.ndarray, sds: np.ndarray,
                      weights: np.ndarray) -> MarginalGrid:
    floor = 1e-12 * (1.0 + np.abs(means))
    sds = np.maximum(sds, floor)
    lower = np.min(means - MARGINAL_GRID_SDS * sds)
    upper = np.max(means + MARGINAL_GRID_SDS * sds)
    abscissae = np.linspace(lower, upper, MARGINAL_GRID_POINTS)
    densities = np.zeros(MARGINAL_GRID_POINTS)
    for mean, sd, weight in zip(means, sds, weights):
        densities += weight * stats.norm.pdf(abscissae, mean, sd)
    return MarginalGrid.normalized(abscissae, densities)


def _hyper_marginal(fits: typing.List[NodeFit], weights: np.ndarray,
                    grid: ThetaGrid) -> typing.Optional[MarginalGrid]:
    # Tabulated on the precision scale: p(tau) = p(theta) / tau.
    if len(fits) >= 3:
        nodes = np.array([fit.theta for fit in fits])
        log_density = np.log(weights)
        theta = np.linspace(nodes[0], nodes[-1], MARGINAL_GRID_POINTS)
        log_density = np.interp(theta, nodes, log_density)
        density = np.exp(log_density - np.max(log_density))
    elif grid.sd is not None and len(fits) == 1:
        mode = fits[0].theta
        theta = np.linspace(mode - MARGINAL_GRID_SDS * grid.sd,
                            mode + MARGINAL_GRID_SDS * grid.sd,
                            MARGINAL_GRID_POINTS)
        density = stats.norm.pdf(theta, mode, grid.sd)
    else:
        return None
    tau = np.exp(theta)
    if np.any(~np.isfinite(tau)) or np.any(np.diff(tau) <= 0):
        return None
    return MarginalGrid.normalized(tau, density / tau)
