import typing
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from condlgm._exceptions import InvalidDimensionError
from condlgm._types import ArrayLike, Vector
from condlgm.gmrf._sparse_precision import CholeskyFactor, SparsePrecision


MARGINAL_GRID_POINTS = 75
MARGINAL_GRID_SDS = 5.0


@dataclass(frozen=True, eq=False)
class MarginalGrid:
    """
    A univariate density tabulated on a strictly increasing grid.
    """
    abscissae: np.ndarray
    densities: np.ndarray

    def __post_init__(self):
        abscissae = np.asarray(self.abscissae, dtype=float)
        densities = np.asarray(self.densities, dtype=float)
        if abscissae.ndim != 1 or abscissae.shape != densities.shape:
            raise InvalidDimensionError('Abscissae and densities must be '
                                        'vectors of equal length.')
        if len(abscissae) < 2 or np.any(np.diff(abscissae) <= 0):
            raise ValueError('Abscissae must be strictly increasing.')
        if np.any(densities < 0) or np.any(~np.isfinite(densities)):
            raise ValueError('Densities must be finite and nonnegative.')
        object.__setattr__(self, 'abscissae', abscissae)
        object.__setattr__(self, 'densities', densities)

    @classmethod
    def normalized(cls, abscissae: ArrayLike,
                   densities: ArrayLike) -> 'MarginalGrid':
        """
        Create a ``MarginalGrid`` of which the trapezoid integral is 1.
        """
        abscissae = np.asarray(abscissae, dtype=float)
        densities = np.asarray(densities, dtype=float)
        total = trapezoid(densities, abscissae)
        if not total > 0:
            raise ValueError('Cannot normalize a density without mass.')
        return cls(abscissae, densities / total)

    def integral(self) -> float:
        return float(trapezoid(self.densities, self.abscissae))

    def cdf(self) -> Vector:
        return cumulative_trapezoid(self.densities, self.abscissae, initial=0.0)

    def mean(self) -> float:
        return float(trapezoid(self.abscissae * self.densities,
                               self.abscissae) / self.integral())

    def sd(self) -> float:
        mean = self.mean()
        variance = trapezoid((self.abscissae - mean) ** 2 * self.densities,
                             self.abscissae) / self.integral()
        return float(np.sqrt(variance))

    def quantile(self, p: float) -> float:
        cdf = self.cdf()
        cdf = cdf / cdf[-1]
        return float(np.interp(p, cdf, self.abscissae))


@dataclass(frozen=True, eq=False)
class ThetaGrid:
    """
    Integration nodes over the (log precision) hyperparameter with their log
    integration weights.
    """
    nodes: np.ndarray
    log_weights: np.ndarray
    mode: typing.Optional[float] = None
    sd: typing.Optional[float] = None
    degraded: bool = False

    def __post_init__(self):
        nodes = np.atleast_1d(np.asarray(self.nodes, dtype=float))
        log_weights = np.atleast_1d(np.asarray(self.log_weights, dtype=float))
        if len(nodes) < 1 or nodes.shape != log_weights.shape:
            raise InvalidDimensionError('A grid needs at least one node and '
                                        'one weight per node.')
        if np.any(~np.isfinite(log_weights)) or np.any(~np.isfinite(nodes)):
            raise ValueError('Grid nodes and weights must be finite.')
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'log_weights', log_weights)

    @classmethod
    def single(cls, theta: float = 0.0, **kwargs) -> 'ThetaGrid':
        return cls(np.array([theta]), np.array([0.0]), **kwargs)

    def __len__(self) -> int:
        return len(self.nodes)

    def normalized_weights(self) -> Vector:
        shifted = np.exp(self.log_weights - np.max(self.log_weights))
        return shifted / np.sum(shifted)


@dataclass(frozen=True, eq=False)
class GaussianApprox:
    """
    The Gaussian approximation of the latent field at a fixed
    hyperparameter, matching the mode and the curvature at the mode.
    ``free_mean`` is the mean before the linear constraints are applied.
    """
    mode: np.ndarray
    precision: SparsePrecision
    factor: CholeskyFactor
    converged: bool
    iterations: int
    theta: float = 0.0
    free_mean: typing.Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class SmoothSummary:
    """
    Posterior mean and sd of a smooth effect at each of its nodes.
    """
    name: str
    locations: np.ndarray
    means: np.ndarray
    sds: np.ndarray


@dataclass(frozen=True, eq=False)
class FitResult:
    """
    The result of a conditional fit: the log marginal likelihood and the
    conditional posterior marginals of the latent field and hyperparameter.
    """
    log_evidence: float
    marginals: typing.Dict[str, MarginalGrid]
    hyper_marginal: typing.Optional[MarginalGrid] = None
    smooth: typing.Optional[SmoothSummary] = None
    theta_grid: typing.Optional[ThetaGrid] = None
    degraded: bool = False
    n_failed_nodes: int = 0
    means: typing.Dict[str, float] = field(default_factory=dict)
