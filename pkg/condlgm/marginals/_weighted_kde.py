import typing
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.integrate import trapezoid

from condlgm._exceptions import DegenerateSupportError, InvalidDimensionError
from condlgm._types import ArrayLike, Vector
from condlgm.diagnostics._ess import _nonnegative, ess


KDE_POINTS_1D = 512
KDE_POINTS_2D = 128
KDE_RANGE_BANDWIDTHS = 3.0


@dataclass(frozen=True, eq=False)
class WeightedKdeEstimate:
    """
    A weighted Gaussian kernel density estimate, tabulated on a grid. For a
    joint estimate, ``densities[i, k]`` belongs to ``(abscissae[i],
    ordinates[k])``.
    """
    abscissae: np.ndarray
    densities: np.ndarray
    bandwidths: typing.Tuple[float, ...]
    support: np.ndarray
    weights: np.ndarray
    ordinates: typing.Optional[np.ndarray] = None

    @property
    def ndim(self) -> int:
        return len(self.bandwidths)

    def integral(self) -> float:
        if self.ordinates is None:
            return float(trapezoid(self.densities, self.abscissae))
        inner = trapezoid(self.densities, self.ordinates, axis=1)
        return float(trapezoid(inner, self.abscissae))

    def evaluate(self, x: ArrayLike) -> Vector:
        """
        Evaluate a univariate estimate off its grid.
        """
        if self.ordinates is not None:
            raise InvalidDimensionError('Evaluate a joint estimate on its '
                                        'grid.')
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return _kernel_sum(x, self.support[:, 0], self.weights,
                           self.bandwidths[0])


def silverman_bandwidth(z: ArrayLike, weights: ArrayLike) -> float:
    """
    The weighted rule of thumb ``1.06 sd_w n_eff^(-1/5)`` with ``n_eff`` the
    effective sample size. If the weighted sd is zero, the unweighted spread
    of ``z`` takes its place.
    """
    z = np.asarray(z, dtype=float)
    weights = np.asarray(weights, dtype=float)
    mean = weights @ z
    sd = float(np.sqrt(weights @ (z - mean) ** 2))
    if not sd > 0:
        sd = float(np.std(z))
    if not sd > 0:
        raise DegenerateSupportError('All {} samples are identical; the '
                                     'posterior is delta-like and has no '
                                     'density estimate.'.format(len(z)))
    return 1.06 * sd * ess(weights) ** -0.2


def weighted_kde_1d(z: ArrayLike, w: ArrayLike,
                    bandwidth: typing.Optional[float] = None,
                    n_points: int = KDE_POINTS_1D) -> WeightedKdeEstimate:
    """
    Estimate the density of ``z`` from weighted samples with a Gaussian
    kernel, on a grid over the weighted support widened by 3 bandwidths.
    :param z: the sampled values.
    :param w: the weights (normalized on the way in).
    :param bandwidth: the kernel sd; defaults to the weighted Silverman rule.
    :param n_points: the size of the grid.
    :return: a ``WeightedKdeEstimate``.
    """
    z, w = _prepare(z, w, 1)
    z = z[:, 0]
    bandwidth = silverman_bandwidth(z, w) if bandwidth is None else bandwidth
    if not bandwidth > 0:
        raise ValueError('The bandwidth must be positive, got {}.'
                         .format(bandwidth))
    abscissae = _grid(z[w > 0], bandwidth, n_points)
    densities = _kernel_sum(abscissae, z, w, bandwidth)
    return WeightedKdeEstimate(abscissae, densities, (float(bandwidth),),
                               z[:, None], w)


def weighted_kde_2d(z: ArrayLike, w: ArrayLike,
                    n_points: int = KDE_POINTS_2D) -> WeightedKdeEstimate:
    """
    Estimate a joint density from weighted pairs with a product Gaussian
    kernel and a Silverman bandwidth per axis.
    :param z: an ``(n, 2)`` array of pairs.
    :param w: the weights (normalized on the way in).
    :param n_points: the grid size per axis.
    :return: a ``WeightedKdeEstimate`` with a ``(n_points, n_points)`` grid.
    """
    z, w = _prepare(z, w, 2)
    bandwidths = tuple(silverman_bandwidth(z[:, k], w) for k in range(2))
    positive = w > 0
    axes = [_grid(z[positive, k], bandwidths[k], n_points) for k in range(2)]
    kernels = [stats.norm.pdf((axes[k][:, None] - z[None, :, k])
                              / bandwidths[k]) / bandwidths[k]
               for k in range(2)]
    densities = (kernels[0] * w) @ kernels[1].T
    return WeightedKdeEstimate(axes[0], densities, bandwidths, z, w,
                               ordinates=axes[1])


def _prepare(z: ArrayLike, w: ArrayLike,
             ndim: int) -> typing.Tuple[np.ndarray, np.ndarray]:
    z = np.asarray(z, dtype=float).reshape(-1, ndim)
    w = _nonnegative(w)
    if len(w) != len(z):
        raise InvalidDimensionError('{} samples for {} weights.'
                                    .format(len(z), len(w)))
    total = float(np.sum(w))
    if not total > 0:
        raise DegenerateSupportError('No sample has a positive weight.')
    return z, w / total


def _grid(z: np.ndarray, bandwidth: float, n_points: int) -> Vector:
    margin = KDE_RANGE_BANDWIDTHS * bandwidth
    return np.linspace(np.min(z) - margin, np.max(z) + margin, n_points)


def _kernel_sum(x: np.ndarray, z: np.ndarray, w: np.ndarray,
                bandwidth: float) -> Vector:
    kernels = stats.norm.pdf((x[:, None] - z[None, :]) / bandwidth)
    return kernels @ w / bandwidth
