import typing

import numpy as np

from condlgm._exceptions import MissingMarginalError
from condlgm._types import Vector
from condlgm.marginals._quantile_curve import quantile_curve
from condlgm.samplers._weighted_sample import WeightedSampleSet


def quantile_curves(
        sample_set: WeightedSampleSet,
        probabilities: typing.Sequence[float],
        literal_sqrt: bool = False
) -> typing.Tuple[Vector, typing.Dict[float, Vector]]:
    """
    Posterior quantile curves of the heteroscedastic random walk model. For
    every sample the curve is computed from its ``(alpha, beta)`` and the
    conditional posterior means of ``mu0`` and ``f``; the curves are then
    averaged pointwise with the sample weights.
    :param sample_set: a sampler result of the quantile model.
    :param probabilities: the probabilities of the curves.
    :param literal_sqrt: passed on to ``quantile_curve``.
    :return: the bin centers and a curve per probability.
    """
    weights = sample_set.weights
    names = list(sample_set.names)
    alpha_at, beta_at = names.index('alpha'), names.index('beta')
    locations = None
    curves = {float(p): None for p in probabilities}
    for sample, weight in zip(sample_set, weights):
        if weight <= 0:
            continue
        fit = sample.fit
        if fit is None or fit.smooth is None or 'mu0' not in fit.means:
            raise MissingMarginalError('Sample ({}, {}) has no smooth '
                                       'effect summary.'
                                       .format(sample.iteration, sample.index))
        locations = fit.smooth.locations
        for p in curves:
            curve = weight * quantile_curve(fit.means['mu0'],
                                            fit.smooth.means, locations,
                                            sample.z[alpha_at],
                                            sample.z[beta_at], p,
                                            literal_sqrt)
            curves[p] = curve if curves[p] is None else curves[p] + curve
    return locations, curves
