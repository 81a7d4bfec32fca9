import logging
import math

import numpy as np
from scipy.optimize import minimize_scalar

from condlgm._exceptions import ConditionalFitError, FactorizationError
from condlgm.fitter._conditional_log_evidence import laplace_log_joint
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.fitter._fit_result import ThetaGrid


DEFAULT_THETA_NODES = 9
NODE_SPACING_SDS = 0.7
CURVATURE_STEP = 0.05
THETA_TOL = 1e-3

_FAILED = 1e300

logger = logging.getLogger(__name__)


def build_theta_grid(model: ConditionalModel,
                     n_nodes: int = DEFAULT_THETA_NODES) -> ThetaGrid:
    """
    Place ``n_nodes`` integration nodes over the hyperparameter of ``model``.

    The mode of ``log pi(theta | y)`` is found by a golden section search on
    the Laplace value of ``log pi(y, theta)``; the posterior sd follows from
    a central difference of the curvature at the mode. Nodes are spaced 0.7
    sd apart around the mode and share a uniform (midpoint rule) weight.
    With the fixed spacing, nine nodes span the mode +- 2.8 sd and their
    cells reach +- 3.15 sd; covering +- 3.5 sd takes eleven nodes.

    If the mode search fails, a single node at the log of the prior mean is
    returned with the ``degraded`` flag set. A model without a free
    hyperparameter gets a single node at 0.
    :param model: the conditional model.
    :param n_nodes: the (odd) number of nodes.
    :return: a ``ThetaGrid``.
    """
    if n_nodes < 1 or n_nodes % 2 == 0:
        raise ValueError('The number of theta nodes must be odd and positive, '
                         'got {}.'.format(n_nodes))
    if model.hyperparameter is None:
        return ThetaGrid.single(0.0)

    def _objective(theta: float) -> float:
        try:
            return -laplace_log_joint(model, theta)
        except (ConditionalFitError, FactorizationError,
                np.linalg.LinAlgError):
            return _FAILED

    start = model.default_theta()
    try:
        search = minimize_scalar(_objective, bracket=(start - 1.0, start + 1.0),
                                 method='golden',
                                 options={'xtol': THETA_TOL})
        failed = not search.success or search.fun >= _FAILED
    except (RuntimeError, ValueError) as err:
        logger.debug('Theta mode search raised: %s', err)
        failed = True
    if failed or not np.isfinite(search.x):
        fallback = math.log(model.hyper_prior.mean)
        logger.warning('Theta mode search failed; falling back to a single '
                       'node at the prior mean (theta = %.6g).', fallback)
        return ThetaGrid.single(fallback, mode=fallback, degraded=True)

    mode = float(search.x)
    sd = _posterior_sd(_objective, mode, float(search.fun))
    logger.debug('Theta mode %.6g with sd %s for %s.', mode, sd,
                 model.hyperparameter)
    if sd is None:
        logger.warning('No negative curvature at the theta mode %.6g; using '
                       'a single node.', mode)
        return ThetaGrid.single(mode, mode=mode, degraded=True)
    if n_nodes == 1:
        return ThetaGrid.single(mode, mode=mode, sd=sd)

    half = n_nodes // 2
    step = NODE_SPACING_SDS * sd
    nodes = mode + step * np.arange(-half, half + 1)
    log_weights = np.full(n_nodes, math.log(step))
    return ThetaGrid(nodes, log_weights, mode=mode, sd=sd)


def _posterior_sd(objective, mode: float, value: float):
    # objective is the negative log posterior, so its curvature is positive.
    upper = objective(mode + CURVATURE_STEP)
    lower = objective(mode - CURVATURE_STEP)
    if upper >= _FAILED or lower >= _FAILED:
        return None
    curvature = (upper - 2.0 * value + lower) / CURVATURE_STEP ** 2
    if not np.isfinite(curvature) or curvature <= 0:
        return None
    return 1.0 / math.sqrt(curvature)
