import logging
import time
import typing

import numpy as np

from condlgm.samplers._evaluation_pool import Evaluator, evaluation_pool
from condlgm.samplers._log_proposal_density import log_proposal_densities
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._sample_proposal import sample_proposal
from condlgm.samplers._substream import substream
from condlgm.samplers._target_adapter import TargetAdapter
from condlgm.samplers._weighted_sample import WeightedSample, WeightedSampleSet


logger = logging.getLogger(__name__)


def draw_round(target: TargetAdapter, proposal: ProposalParams, n: int,
               seed: int, round_index: int,
               evaluate: Evaluator) -> typing.List[WeightedSample]:
    """
    Draw ``n`` points from ``proposal``, each from its own substream
    ``(seed, round_index, j)``, and evaluate the target at all of them. The
    returned samples carry no weight yet.
    """
    points = [sample_proposal(proposal, substream(seed, round_index, j))
              for j in range(n)]
    evaluations = evaluate(target, points)
    return [WeightedSample(z=z, iteration=round_index, index=j,
                           log_evidence=evaluation.log_evidence,
                           log_prior=evaluation.log_prior,
                           fit=evaluation.fit,
                           failed=evaluation.failed)
            for j, (z, evaluation) in enumerate(zip(points, evaluations))]


def importance_sample(target: TargetAdapter,
                      proposal: ProposalParams,
                      n: int,
                      seed: int,
                      round_index: int = 0,
                      workers: int = 1,
                      evaluate: typing.Optional[Evaluator] = None
                      ) -> WeightedSampleSet:
    """
    Plain importance sampling from a fixed proposal: the log weight of every
    sample is ``log pi(y | z) + log pi(z) - log g(z)``.
    :param target: the target adapter.
    :param proposal: the proposal ``g``.
    :param n: the number of samples.
    :param seed: the master seed.
    :param round_index: the first index of the substreams used.
    :param workers: the number of worker processes (if no ``evaluate``).
    :param evaluate: an evaluator of an already running pool.
    :return: a ``WeightedSampleSet`` with unnormalized log weights.
    """
    start = time.monotonic()
    if evaluate is None:
        with evaluation_pool(workers) as pool_evaluate:
            samples = draw_round(target, proposal, n, seed, round_index,
                                 pool_evaluate)
    else:
        samples = draw_round(target, proposal, n, seed, round_index, evaluate)

    log_g = log_proposal_densities(proposal, [s.z for s in samples])
    for sample, log_density in zip(samples, log_g):
        sample.log_weight = sample.log_target - float(log_density)
    n_failed = sum(sample.failed for sample in samples)
    if n_failed:
        logger.warning('%d of %d conditional fits failed in round %d.',
                       n_failed, n, round_index)
    return WeightedSampleSet(samples=samples,
                             names=tuple(target.names),
                             method='is',
                             proposals=[proposal],
                             schedule=[n],
                             n_failed=n_failed,
                             n_evaluated=n,
                             runtime_seconds=time.monotonic() - start)


def finite_ess(sample_set: WeightedSampleSet) -> float:
    log_weights = sample_set.log_weights
    if not np.any(np.isfinite(log_weights)):
        return 0.0
    weights = sample_set.weights
    return float(1.0 / np.sum(weights ** 2))
