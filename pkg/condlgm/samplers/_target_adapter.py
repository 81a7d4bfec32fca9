import logging
import math
import typing
from abc import ABC, abstractmethod

import numpy as np

from condlgm._exceptions import CondLgmError
from condlgm._types import ConditioningPoint, Matrix, ParamNames
from condlgm.fitter._build_theta_grid import (
    DEFAULT_THETA_NODES,
    build_theta_grid,
)
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.fitter._fit_result import FitResult
from condlgm.fitter._latent_marginals import latent_marginals
from condlgm.samplers._proposal_params import ProposalParams


logger = logging.getLogger(__name__)


class PointEvaluation(typing.NamedTuple):
    log_prior: float
    log_evidence: float
    fit: typing.Optional[FitResult]
    failed: bool


class TargetAdapter(ABC):
    """
    Connects a model to the samplers: it knows the prior of the conditioning
    parameters and builds the conditional model at any conditioning point.
    Subclasses must be picklable; they are sent to worker processes.
    """
    n_theta_nodes = DEFAULT_THETA_NODES

    @property
    @abstractmethod
    def names(self) -> ParamNames:
        """
        The names of the conditioning parameters.
        """

    @abstractmethod
    def log_prior(self, z: ConditioningPoint) -> float:
        """
        The log prior density of ``z``; ``-inf`` outside the support.
        """

    @abstractmethod
    def build_model(self, z: ConditioningPoint) -> ConditionalModel:
        """
        The conditional model with the conditioning parameters fixed at
        ``z``.
        """

    @abstractmethod
    def default_proposal(self) -> ProposalParams:
        ...

    def default_mh_step(self) -> Matrix:
        return np.eye(self.dim)

    def initial_point(self) -> ConditioningPoint:
        return self.default_proposal().mu.copy()

    @property
    def dim(self) -> int:
        return len(self.names)

    def fit(self, z: ConditioningPoint) -> FitResult:
        """
        Fit the conditional model at ``z`` on its own hyperparameter grid.
        """
        model = self.build_model(z)
        return latent_marginals(model,
                                build_theta_grid(model, self.n_theta_nodes))

    def evaluate(self, z: ConditioningPoint) -> PointEvaluation:
        """
        Evaluate the prior and, if the prior is positive, the conditional
        fit at ``z``. A failing fit is reported, not raised; a plain
        ``ValueError`` from the numerics counts as a failed fit.
        :param z: the conditioning point.
        :return: a ``PointEvaluation``.
        """
        log_prior = float(self.log_prior(z))
        if not np.isfinite(log_prior):
            return PointEvaluation(-math.inf, -math.inf, None, False)
        try:
            fit = self.fit(z)
        except (CondLgmError, ValueError, np.linalg.LinAlgError,
                FloatingPointError) as err:
            logger.debug('Conditional fit failed at %s: %s', z, err)
            return PointEvaluation(log_prior, -math.inf, None, True)
        if not np.isfinite(fit.log_evidence):
            return PointEvaluation(log_prior, -math.inf, None, True)
        return PointEvaluation(log_prior, fit.log_evidence, fit, False)
