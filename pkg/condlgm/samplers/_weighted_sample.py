import math
import typing
from dataclasses import dataclass, field

import numpy as np

from condlgm._exceptions import EmptyPosteriorError
from condlgm._types import Matrix, ParamNames, Vector
from condlgm.fitter._fit_result import FitResult
from condlgm.samplers._normalize_weights import normalize_weights
from condlgm.samplers._proposal_params import ProposalParams


@dataclass
class WeightedSample:
    """
    One draw of the conditioning parameters with its conditional fit.

    ``log_gamma`` is the log of the running mixture numerator
    ``sum_l N_l g_l(z)`` of adaptive sampling; plain importance sampling
    leaves it at ``-inf``. ``log_weight`` is unnormalized.
    """
    z: np.ndarray
    iteration: int
    index: int
    log_evidence: float = -math.inf
    log_prior: float = -math.inf
    log_gamma: float = -math.inf
    log_weight: float = -math.inf
    fit: typing.Optional[FitResult] = None
    failed: bool = False

    @property
    def gamma(self) -> float:
        return math.exp(self.log_gamma)

    @property
    def log_target(self) -> float:
        """
        ``log pi(y | z) + log pi(z)``, ``-inf`` for rejected or failed points.
        """
        if self.failed or not np.isfinite(self.log_prior):
            return -math.inf
        return self.log_evidence + self.log_prior


@dataclass
class WeightedSampleSet:
    """
    The weighted samples of a sampler run, in draw order, together with the
    proposals and sample counts that produced them.
    """
    samples: typing.List[WeightedSample]
    names: ParamNames
    method: str
    proposals: typing.List[ProposalParams] = field(default_factory=list)
    schedule: typing.List[int] = field(default_factory=list)
    n_failed: int = 0
    n_evaluated: int = 0
    warnings: typing.List[str] = field(default_factory=list)
    runtime_seconds: float = 0.0

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> typing.Iterator[WeightedSample]:
        return iter(self.samples)

    @property
    def points(self) -> Matrix:
        if not self.samples:
            return np.zeros((0, len(self.names)))
        return np.array([sample.z for sample in self.samples])

    @property
    def log_weights(self) -> Vector:
        return np.array([sample.log_weight for sample in self.samples])

    @property
    def weights(self) -> Vector:
        """
        The self normalized weights.
        """
        if not self.samples:
            raise EmptyPosteriorError('The sample set is empty.')
        return normalize_weights(self.log_weights)

    @property
    def failure_rate(self) -> float:
        if not self.n_evaluated:
            return 0.0
        return self.n_failed / self.n_evaluated

    def mean(self) -> Vector:
        """
        The weighted posterior mean of the conditioning parameters.
        """
        return self.weights @ self.points

    def cov(self) -> Matrix:
        """
        The weighted (uncorrected) posterior covariance.
        """
        weights = self.weights
        centered = self.points - weights @ self.points
        return (weights[:, None] * centered).T @ centered


@dataclass
class SampleChain(WeightedSampleSet):
    """
    The states of a Metropolis-Hastings chain after burn-in. Every state has
    log weight 0, so the normalized weights are uniform.
    """
    acceptance_rate: float = 0.0
    burn_in: int = 0
