from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from condlgm._exceptions import MissingMarginalError
from condlgm.fitter._fit_result import MarginalGrid
from condlgm.samplers._weighted_sample import WeightedSampleSet


MIXED_GRID_POINTS = 200


@dataclass(frozen=True, eq=False)
class MixedMarginal(MarginalGrid):
    """
    The posterior marginal of a latent parameter, mixed over the weighted
    samples of the conditioning parameters.
    """
    name: str = ''


def mix_marginals(samples: WeightedSampleSet, param: str,
                  n_points: int = MIXED_GRID_POINTS) -> MixedMarginal:
    """
    Mix the conditional marginals of ``param`` over ``samples``: the density
    at every point of a common grid is the weighted sum of the linearly
    interpolated conditional densities (0 outside their range). The common
    grid spans the union of all ranges.

    Samples with weight zero do not contribute and need no marginal.
    :param samples: a sampler result with conditional fits.
    :param param: the name of the latent parameter.
    :param n_points: the size of the common grid.
    :return: a normalized ``MixedMarginal``.
    """
    weights = samples.weights
    grids = []
    for sample, weight in zip(samples, weights):
        if weight <= 0:
            continue
        if sample.fit is None or param not in sample.fit.marginals:
            raise MissingMarginalError('Sample ({}, {}) has no conditional '
                                       'marginal for {}.'
                                       .format(sample.iteration, sample.index,
                                               param))
        grids.append((weight, sample.fit.marginals[param]))

    lower = min(grid.abscissae[0] for _, grid in grids)
    upper = max(grid.abscissae[-1] for _, grid in grids)
    abscissae = np.linspace(lower, upper, n_points)
    densities = np.zeros(n_points)
    for weight, grid in grids:
        densities += weight * np.interp(abscissae, grid.abscissae,
                                        grid.densities, left=0.0, right=0.0)
    densities = densities / trapezoid(densities, abscissae)
    return MixedMarginal(abscissae, densities, name=param)
