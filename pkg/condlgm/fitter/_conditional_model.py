import math
import typing
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from condlgm._exceptions import (
    InvalidDimensionError,
    UnsupportedModelError,
)
from condlgm._types import GAUSSIAN, GAUSSIAN_HETEROSCEDASTIC, Vector
from condlgm.gmrf._build_rw2_precision import RW2_JITTER, rw2_structure
from condlgm.gmrf._sparse_precision import LinearConstraint, SparsePrecision


FAMILIES = (GAUSSIAN, GAUSSIAN_HETEROSCEDASTIC)
DEFAULT_FIXED_PRIOR_PRECISION = 0.001


@dataclass(frozen=True)
class GammaPrior:
    """
    A Gamma(shape, rate) prior on a precision, evaluated on the log scale.
    """
    shape: float = 1.0
    rate: float = 0.00005

    @property
    def mean(self) -> float:
        return self.shape / self.rate

    def log_density(self, theta: float) -> float:
        """
        Return the log density of ``theta = log(precision)``, including the
        Jacobian of the log transform.
        :param theta: the log precision.
        :return: the log density.
        """
        return float(self.shape * math.log(self.rate)
                     - math.lgamma(self.shape) + self.shape * theta
                     - self.rate * np.exp(theta))


@dataclass(frozen=True, eq=False)
class Rw2Term:
    """
    A smooth effect ``f(u)`` with a second order random walk prior over
    ``n_nodes`` ordered nodes. ``index`` holds the node of every observation
    and ``locations`` the covariate value of every node.
    """
    index: np.ndarray
    n_nodes: int
    locations: typing.Optional[np.ndarray] = None
    name: str = 'f'
    constrained: bool = True
    jitter: float = RW2_JITTER

    def __post_init__(self):
        index = np.asarray(self.index, dtype=np.int64)
        object.__setattr__(self, 'index', index)
        if self.n_nodes < 3:
            raise InvalidDimensionError('A second order random walk needs at '
                                        'least 3 nodes, got {}.'
                                        .format(self.n_nodes))
        if len(index) and (index.min() < 0 or index.max() >= self.n_nodes):
            raise InvalidDimensionError('Node index out of range 0..{}.'
                                        .format(self.n_nodes - 1))
        if self.locations is not None:
            locations = np.asarray(self.locations, dtype=float)
            if locations.shape != (self.n_nodes,):
                raise InvalidDimensionError('Expected {} node locations, got '
                                            '{}.'.format(self.n_nodes,
                                                         locations.shape))
            object.__setattr__(self, 'locations', locations)


@dataclass(frozen=True, eq=False)
class ConditionalModel:
    """
    A latent Gaussian model with all conditioning parameters fixed.

    The latent field is ``x = (fixed effects, f, eps)``, the linear predictor
    ``eta = Z beta + f(u) + eps`` and ``y_i ~ N(eta_i, 1 / tau_i)`` for every
    observed ``i``. Missing responses are ``nan`` and left out of the
    likelihood.

    The observation precision is either the free hyperparameter ``tau``
    (``noise_log_precision`` is ``None``), a fixed ``noise_log_precision`` or
    a fixed per observation ``log_precision`` vector (the heteroscedastic
    family). A smooth term brings its own free precision; at most one free
    hyperparameter is supported.
    """
    y: np.ndarray
    design: np.ndarray
    fixed_names: typing.Tuple[str, ...]
    family: str = GAUSSIAN
    noise_log_precision: typing.Optional[float] = None
    log_precision: typing.Optional[np.ndarray] = None
    smooth: typing.Optional[Rw2Term] = None
    fixed_prior_precision: typing.Any = DEFAULT_FIXED_PRIOR_PRECISION
    hyper_prior: GammaPrior = field(default_factory=GammaPrior)
    iid_log_precision: typing.Optional[float] = None

    def __post_init__(self):
        # Theta independent pieces, built on first use.
        object.__setattr__(self, '_cache', {})
        y = np.asarray(self.y, dtype=float).ravel()
        design = np.asarray(self.design, dtype=float)
        if design.ndim == 1:
            design = design[:, None]
        object.__setattr__(self, 'y', y)
        object.__setattr__(self, 'design', design)
        object.__setattr__(self, 'fixed_names', tuple(self.fixed_names))

        if self.family not in FAMILIES:
            raise UnsupportedModelError('Unsupported likelihood family {}; '
                                        'expected one of {}.'
                                        .format(self.family, FAMILIES))
        if len(y) < 1:
            raise InvalidDimensionError('A model needs at least 1 '
                                        'observation.')
        if design.shape[0] != len(y):
            raise InvalidDimensionError('Design has {} rows for {} responses.'
                                        .format(design.shape[0], len(y)))
        if len(self.fixed_names) != design.shape[1]:
            raise InvalidDimensionError('{} names for {} fixed effects.'
                                        .format(len(self.fixed_names),
                                                design.shape[1]))
        if np.any(~np.isfinite(design)):
            raise ValueError('The design matrix must be finite.')

        prior_precision = np.broadcast_to(
            np.asarray(self.fixed_prior_precision, dtype=float),
            (design.shape[1],)).copy()
        if np.any(prior_precision <= 0):
            raise ValueError('Fixed effect prior precisions must be positive.')
        object.__setattr__(self, 'fixed_prior_precision', prior_precision)

        if self.family == GAUSSIAN_HETEROSCEDASTIC:
            if self.log_precision is None:
                raise ValueError('The heteroscedastic family needs a '
                                 'log_precision vector.')
            log_precision = np.asarray(self.log_precision, dtype=float).ravel()
            if log_precision.shape != y.shape:
                raise InvalidDimensionError('Expected {} log precisions, got '
                                            '{}.'.format(len(y),
                                                         len(log_precision)))
            object.__setattr__(self, 'log_precision', log_precision)
        elif self.log_precision is not None:
            raise ValueError('A log_precision vector requires the {} family.'
                             .format(GAUSSIAN_HETEROSCEDASTIC))

        if self.smooth is not None and len(self.smooth.index) != len(y):
            raise InvalidDimensionError('The smooth term indexes {} '
                                        'observations, the model has {}.'
                                        .format(len(self.smooth.index),
                                                len(y)))
        if self._free_noise and self.smooth is not None:
            raise UnsupportedModelError('Only one free hyperparameter is '
                                        'supported; fix the observation '
                                        'precision when using a smooth term.')

    @property
    def _free_noise(self) -> bool:
        return self.family == GAUSSIAN and self.noise_log_precision is None

    @property
    def observed(self) -> np.ndarray:
        return self._cached('observed', lambda: ~np.isnan(self.y))

    @property
    def n_observed(self) -> int:
        return int(np.sum(self.observed))

    @property
    def n_fixed(self) -> int:
        return self.design.shape[1]

    @property
    def hyperparameter(self) -> typing.Optional[str]:
        """
        The name of the free hyperparameter (on the precision scale), or
        ``None`` if all precisions are fixed.
        """
        if self._free_noise:
            return 'tau'
        if self.smooth is not None:
            return 'tau_{}'.format(self.smooth.name)
        return None

    @property
    def latent_dim(self) -> int:
        result = self.n_fixed
        if self.smooth is not None:
            result += self.smooth.n_nodes
        if self.iid_log_precision is not None:
            result += self.n_observed
        return result

    @property
    def smooth_slice(self) -> typing.Optional[slice]:
        if self.smooth is None:
            return None
        return slice(self.n_fixed, self.n_fixed + self.smooth.n_nodes)

    def default_theta(self) -> float:
        """
        A starting value for the hyperparameter mode search.
        """
        if self._free_noise:
            spread = np.var(self.y[self.observed])
            return -math.log(spread) if spread > 0 else 0.0
        return 0.0

    def observation_log_precision(self, theta: float = 0.0) -> Vector:
        """
        The log precision of every observed response.
        """
        observed = self.observed
        if self.family == GAUSSIAN_HETEROSCEDASTIC:
            return self.log_precision[observed]
        value = theta if self._free_noise else self.noise_log_precision
        return np.full(int(np.sum(observed)), float(value))

    def projection(self) -> sparse.csr_matrix:
        """
        The matrix that maps the latent field to the linear predictor of the
        observed responses.
        """
        return self._cached('projection', self._build_projection)

    def _build_projection(self) -> sparse.csr_matrix:
        observed = self.observed
        n_obs = int(np.sum(observed))
        blocks = [sparse.csr_matrix(self.design[observed])]
        if self.smooth is not None:
            index = self.smooth.index[observed]
            blocks.append(sparse.csr_matrix(
                (np.ones(n_obs), (np.arange(n_obs), index)),
                shape=(n_obs, self.smooth.n_nodes)))
        if self.iid_log_precision is not None:
            blocks.append(sparse.identity(n_obs, format='csr'))
        return sparse.csr_matrix(sparse.hstack(blocks))

    def prior_precision(self, theta: float = 0.0) -> SparsePrecision:
        """
        The block diagonal precision of the latent field. The jitter of the
        random walk is added to its own block only.
        """
        if self.smooth is None:
            return self._cached('prior', self._build_prior_precision)
        return self._build_prior_precision(theta)

    def _build_prior_precision(self, theta: float = 0.0) -> SparsePrecision:
        blocks = [sparse.diags(self.fixed_prior_precision)]
        if self.smooth is not None:
            tau = float(np.exp(theta))
            structure = tau * self._cached(
                'rw2_structure', lambda: rw2_structure(self.smooth.n_nodes))
            blocks.append(structure + self.smooth.jitter
                          * sparse.identity(self.smooth.n_nodes))
        if self.iid_log_precision is not None:
            blocks.append(math.exp(self.iid_log_precision)
                          * sparse.identity(self.n_observed))
        return SparsePrecision.from_matrix(sparse.block_diag(blocks))

    def constraint(self) -> typing.Optional[LinearConstraint]:
        """
        The sum-to-zero constraint on the smooth term, if any.
        """
        return self._cached('constraint', self._build_constraint)

    def _build_constraint(self) -> typing.Optional[LinearConstraint]:
        if self.smooth is None or not self.smooth.constrained:
            return None
        return LinearConstraint.sum_to_zero(self.smooth.n_nodes,
                                            offset=self.n_fixed,
                                            dim=self.latent_dim)

    def log_hyper_prior(self, theta: float) -> float:
        if self.hyperparameter is None:
            return 0.0
        return self.hyper_prior.log_density(theta)

    def _cached(self, key: str, build: typing.Callable[[], typing.Any]):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]
