import logging
import time

from condlgm._exceptions import AdaptationError, SamplerError
from condlgm.samplers._adapt_moments import adapt_moments
from condlgm.samplers._evaluation_pool import evaluation_pool
from condlgm.samplers._importance_sample import finite_ess, importance_sample
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._sampler_config import SamplerConfig
from condlgm.samplers._target_adapter import TargetAdapter
from condlgm.samplers._weighted_sample import WeightedSampleSet


logger = logging.getLogger(__name__)


def run_is(target: TargetAdapter, g0: ProposalParams,
           cfg: SamplerConfig) -> WeightedSampleSet:
    """
    Importance sampling with a preliminary adaptation. ``cfg.n0`` samples
    from ``g0`` give the moments of the proposal ``g1`` and are discarded;
    the ``cfg.n`` samples from ``g1`` form the result.
    :param target: the target adapter.
    :param g0: the preliminary proposal.
    :param cfg: the sampler settings.
    :return: the weighted samples from ``g1``.
    """
    if cfg.method != 'is':
        raise ValueError('run_is needs method "is", got {}.'
                         .format(cfg.method))
    start = time.monotonic()
    with evaluation_pool(cfg.workers) as evaluate:
        preliminary = importance_sample(target, g0, cfg.n0, cfg.seed,
                                        round_index=0, evaluate=evaluate)
        logger.info('Preliminary round: %d samples, ESS %.1f.', cfg.n0,
                    finite_ess(preliminary))
        try:
            g1 = adapt_moments(preliminary.samples, g0)
        except AdaptationError as err:
            raise SamplerError('The preliminary importance sample is '
                               'unusable ({}); try a wider initial '
                               'proposal.'.format(err)) from err
        main = importance_sample(target, g1, cfg.n, cfg.seed,
                                 round_index=1, evaluate=evaluate)
    logger.info('Main round: %d samples, ESS %.1f.', cfg.n, finite_ess(main))

    main.proposals = [g0, g1]
    main.schedule = [cfg.n0, cfg.n]
    main.n_failed += preliminary.n_failed
    main.n_evaluated += preliminary.n_evaluated
    main.runtime_seconds = time.monotonic() - start
    return main
