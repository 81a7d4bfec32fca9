import logging
import math
import time

import numpy as np

from condlgm._exceptions import AdaptationError
from condlgm.samplers._adapt_moments import adapt_moments
from condlgm.samplers._evaluation_pool import evaluation_pool
from condlgm.samplers._importance_sample import draw_round, finite_ess
from condlgm.samplers._log_proposal_density import log_proposal_densities
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._sampler_config import SamplerConfig
from condlgm.samplers._target_adapter import TargetAdapter
from condlgm.samplers._weighted_sample import WeightedSampleSet


logger = logging.getLogger(__name__)


def run_amis(target: TargetAdapter, g0: ProposalParams,
             cfg: SamplerConfig) -> WeightedSampleSet:
    """
    Adaptive multiple importance sampling.

    In round ``t``, ``N_t`` samples are drawn from ``lambda_t``. A new sample
    gets ``gamma = sum_{l <= t} N_l g_l(z)``; every earlier sample has
    ``N_t g_t(z)`` added to its ``gamma``. All weights are then

        w = pi(y | z) pi(z) / (gamma / sum_{l <= t} N_l)

    i.e. the target over the deterministic mixture of all proposals so far.
    The next proposal is moment matched to all samples; no sample is
    discarded. If adaptation fails, the current proposal is kept.
    :param target: the target adapter.
    :param g0: the initial proposal.
    :param cfg: the sampler settings; ``cfg.schedule`` holds ``N_t``.
    :return: all weighted samples with unnormalized log weights.
    """
    if cfg.method != 'amis':
        raise ValueError('run_amis needs method "amis", got {}.'
                         .format(cfg.method))
    start = time.monotonic()
    proposals = [g0]
    samples = []
    warnings = []
    n_failed = 0
    total = 0
    last = len(cfg.schedule) - 1

    with evaluation_pool(cfg.workers) as evaluate:
        for t, n_t in enumerate(cfg.schedule):
            current = proposals[t]
            log_n_t = math.log(n_t)

            # Past samples: add N_t g_t(z) to gamma.
            if samples:
                log_g_t = log_proposal_densities(current,
                                                 [s.z for s in samples])
                for sample, log_density in zip(samples, log_g_t):
                    sample.log_gamma = float(np.logaddexp(
                        sample.log_gamma, log_n_t + log_density))

            # New samples: gamma over all proposals so far.
            new = draw_round(target, current, n_t, cfg.seed, t, evaluate)
            points = [s.z for s in new]
            terms = np.array([math.log(n_l)
                              + log_proposal_densities(proposal, points)
                              for n_l, proposal
                              in zip(cfg.schedule[:t + 1], proposals)])
            log_gamma = np.logaddexp.reduce(terms, axis=0)
            for sample, value in zip(new, log_gamma):
                sample.log_gamma = float(value)
            samples.extend(new)

            total += n_t
            log_total = math.log(total)
            for sample in samples:
                sample.log_weight = (sample.log_target - sample.log_gamma
                                     + log_total)

            failed_now = sum(s.failed for s in new)
            n_failed += failed_now
            if failed_now:
                logger.warning('%d of %d conditional fits failed in round %d.',
                               failed_now, n_t, t)
            result = WeightedSampleSet(samples, tuple(target.names), 'amis')
            logger.info('Round %d: %d samples, %d in total, ESS %.1f.', t,
                        n_t, total, finite_ess(result))

            if t == last:
                break
            if not cfg.adapt:
                proposals.append(current)
                continue
            try:
                proposals.append(adapt_moments(samples, current))
            except AdaptationError as err:
                message = 'Round {}: adaptation failed ({}); keeping the ' \
                          'current proposal.'.format(t, err)
                logger.warning(message)
                warnings.append(message)
                proposals.append(current)

    return WeightedSampleSet(samples=samples,
                             names=tuple(target.names),
                             method='amis',
                             proposals=proposals,
                             schedule=list(cfg.schedule),
                             n_failed=n_failed,
                             n_evaluated=total,
                             warnings=warnings,
                             runtime_seconds=time.monotonic() - start)


def mixture_log_weights(sample_set: WeightedSampleSet) -> np.ndarray:
    """
    Recompute the final adaptive weights from scratch: the target over the
    mixture ``psi(z) = sum_l N_l g_l(z) / sum_l N_l`` of all stored
    proposals.
    :param sample_set: the result of ``run_amis``.
    :return: the unnormalized log weights.
    """
    counts = np.asarray(sample_set.schedule, dtype=float)
    points = sample_set.points
    terms = np.array([math.log(n_l) + log_proposal_densities(proposal, points)
                      for n_l, proposal
                      in zip(counts, sample_set.proposals)])
    log_psi = np.logaddexp.reduce(terms, axis=0) - math.log(np.sum(counts))
    log_target = np.array([s.log_target for s in sample_set.samples])
    return log_target - log_psi
