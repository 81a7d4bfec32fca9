import math

import numpy as np
from scipy.special import logsumexp

from condlgm._exceptions import EmptyPosteriorError
from condlgm.samplers._weighted_sample import WeightedSampleSet


def estimate_log_evidence(sample_set: WeightedSampleSet) -> float:
    """
    Estimate the log marginal likelihood ``log pi(y)`` of the full model as
    the log of the average unnormalized importance weight.
    :param sample_set: the result of an importance sampling run.
    :return: the log evidence estimate.
    """
    if sample_set.method == 'mh':
        raise ValueError('A Metropolis-Hastings chain has no importance '
                         'weights.')
    log_weights = sample_set.log_weights
    if not np.any(np.isfinite(log_weights)):
        raise EmptyPosteriorError('No sample has a finite log weight.')
    return float(logsumexp(log_weights) - math.log(len(log_weights)))
