import numpy as np

from condlgm._exceptions import DataError
from condlgm._types import GAUSSIAN, ConditioningPoint
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.models._dataset import Dataset
from condlgm.models._priors import laplace_log_prior
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._target_adapter import TargetAdapter


RESPONSE = 'y'


class LassoAdapter(TargetAdapter):
    """
    The Bayesian lasso: ``y = beta0 + X beta + e`` with independent
    Laplace(0, 1 / lam) priors on the coefficients ``beta``, which are the
    conditioning parameters. Every column other than ``y`` is a covariate.
    """

    def __init__(self, data: Dataset, lam: float = 1.0):
        if not lam > 0:
            raise ValueError('The lasso needs lambda > 0, got {}.'
                             .format(lam))
        data.require(RESPONSE)
        self.covariates = tuple(name for name in data.names
                                if name != RESPONSE)
        if not self.covariates:
            raise DataError('The lasso needs at least one covariate column.')
        self.lam = float(lam)
        self.y = data[RESPONSE]
        self.x = np.column_stack([data[name] for name in self.covariates])
        if np.any(np.isnan(self.x)):
            raise DataError('Lasso covariates may not be missing.')
        gram = self.x.T @ self.x
        if np.linalg.matrix_rank(gram) < gram.shape[0]:
            raise DataError('X^T X is singular; drop collinear covariates or '
                            'add a small ridge jitter to the diagonal.')
        self.gram = gram

    @property
    def names(self):
        return tuple('beta_{}'.format(name) for name in self.covariates)

    def log_prior(self, z: ConditioningPoint) -> float:
        return laplace_log_prior(z, self.lam)

    def build_model(self, z: ConditioningPoint) -> ConditionalModel:
        return ConditionalModel(y=self.y - self.x @ np.asarray(z),
                                design=np.ones((len(self.y), 1)),
                                fixed_names=('beta0',),
                                family=GAUSSIAN)

    def default_proposal(self) -> ProposalParams:
        sigma = np.linalg.inv(self.gram)
        return ProposalParams.student_t(np.zeros(self.dim),
                                        0.5 * (sigma + sigma.T), nu=3.0)

    def default_mh_step(self) -> np.ndarray:
        step = np.linalg.inv(4.0 * self.gram)
        return 0.5 * (step + step.T)

    def initial_point(self) -> ConditioningPoint:
        return np.zeros(self.dim)


def lasso_adapter(data: Dataset, lam: float = 1.0) -> LassoAdapter:
    return LassoAdapter(data, lam)
