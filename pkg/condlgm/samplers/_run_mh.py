import logging
import math
import time
import typing

import numpy as np

from condlgm._exceptions import InvalidDimensionError, SamplerError
from condlgm._types import ArrayLike
from condlgm.samplers._sampler_config import SamplerConfig
from condlgm.samplers._substream import substream
from condlgm.samplers._target_adapter import TargetAdapter
from condlgm.samplers._weighted_sample import SampleChain, WeightedSample


logger = logging.getLogger(__name__)


def run_mh(target: TargetAdapter, cfg: SamplerConfig,
           z0: typing.Optional[ArrayLike] = None) -> SampleChain:
    """
    Random walk Metropolis-Hastings over the conditioning parameters with a
    Gaussian step of covariance ``cfg.mh_step_sigma``. The step is
    symmetric, so a move is accepted with probability
    ``min(1, exp(log_target(z*) - log_target(z)))``. A failed fit at the
    proposed point counts as a rejection.

    The first ``cfg.mh_burn_in`` states are discarded; the ``cfg.n`` states
    after that are returned with uniform weights.
    :param target: the target adapter.
    :param cfg: the sampler settings.
    :param z0: the starting point; defaults to ``target.initial_point()``.
    :return: a ``SampleChain``.
    """
    if cfg.method != 'mh':
        raise ValueError('run_mh needs method "mh", got {}.'
                         .format(cfg.method))
    start = time.monotonic()
    step = (target.default_mh_step() if cfg.mh_step_sigma is None
            else cfg.mh_step_sigma)
    z = np.atleast_1d(np.asarray(target.initial_point() if z0 is None else z0,
                                 dtype=float))
    if z.shape != (target.dim,) or step.shape != (target.dim, target.dim):
        raise InvalidDimensionError('The start point and step need dimension '
                                    '{}, got {} and {}.'
                                    .format(target.dim, z.shape, step.shape))
    try:
        step_cholesky = np.linalg.cholesky(step)
    except np.linalg.LinAlgError as err:
        raise SamplerError('The random walk covariance is not positive '
                           'definite.') from err

    current = _state(target, z, 0)
    if not np.isfinite(current.log_target):
        raise SamplerError('The chain cannot start at {}: the target is zero '
                           'there.'.format(z.tolist()))

    rng = substream(cfg.seed, 0)
    burn_in = cfg.mh_burn_in
    states = []
    accepted = 0
    n_failed = 0
    for k in range(burn_in + cfg.n):
        proposal_z = current.z + step_cholesky @ rng.standard_normal(target.dim)
        u = rng.uniform()
        proposal = _state(target, proposal_z, k + 1)
        n_failed += proposal.failed
        log_ratio = proposal.log_target - current.log_target
        if log_ratio >= 0 or u < math.exp(log_ratio):
            current = proposal
            if k >= burn_in:
                accepted += 1
        if k >= burn_in:
            states.append(WeightedSample(z=current.z, iteration=0,
                                         index=k - burn_in,
                                         log_evidence=current.log_evidence,
                                         log_prior=current.log_prior,
                                         log_weight=0.0, fit=current.fit))
        if (k + 1) % 1000 == 0:
            logger.info('Chain step %d of %d.', k + 1, burn_in + cfg.n)

    acceptance = accepted / cfg.n
    logger.info('Chain finished: acceptance rate %.3f after %d burn-in steps.',
                acceptance, burn_in)
    if n_failed:
        logger.warning('%d of %d conditional fits failed.', n_failed,
                       burn_in + cfg.n)
    return SampleChain(samples=states,
                       names=tuple(target.names),
                       method='mh',
                       schedule=[cfg.n],
                       n_failed=n_failed,
                       n_evaluated=burn_in + cfg.n + 1,
                       runtime_seconds=time.monotonic() - start,
                       acceptance_rate=acceptance,
                       burn_in=burn_in)


def _state(target: TargetAdapter, z: np.ndarray,
           index: int) -> WeightedSample:
    evaluation = target.evaluate(z)
    return WeightedSample(z=z, iteration=0, index=index,
                          log_evidence=evaluation.log_evidence,
                          log_prior=evaluation.log_prior,
                          fit=evaluation.fit,
                          failed=evaluation.failed)
