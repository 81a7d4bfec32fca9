import numpy as np

from condlgm._exceptions import DataError
from condlgm._types import GAUSSIAN, ConditioningPoint
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.models._dataset import Dataset
from condlgm.models._priors import gaussian_log_prior
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._target_adapter import TargetAdapter


FLAT_PRECISION = 1e-6
COLUMNS = ('y', 'x1', 'x2')


class BivariateLinearAdapter(TargetAdapter):
    """
    ``y = beta0 + beta1 x1 + beta2 x2 + e`` conditioned on ``(beta1,
    beta2)``: the conditional model regresses ``y - beta1 x1 - beta2 x2`` on
    an intercept with unknown noise precision. The flat priors of the slopes
    are Gaussians of precision ``1e-6``.
    """

    def __init__(self, data: Dataset):
        data.require(*COLUMNS)
        self.y = data['y']
        self.x = np.column_stack([data['x1'], data['x2']])
        if np.any(np.isnan(self.x)):
            raise DataError('The covariates x1 and x2 may not be missing.')

    @property
    def names(self):
        return 'beta1', 'beta2'

    def log_prior(self, z: ConditioningPoint) -> float:
        return gaussian_log_prior(z, 0.0, FLAT_PRECISION)

    def build_model(self, z: ConditioningPoint) -> ConditionalModel:
        return ConditionalModel(y=self.y - self.x @ np.asarray(z),
                                design=np.ones((len(self.y), 1)),
                                fixed_names=('beta0',),
                                family=GAUSSIAN)

    def default_proposal(self) -> ProposalParams:
        return ProposalParams.gaussian(np.zeros(2), 5.0 * np.eye(2))

    def default_mh_step(self) -> np.ndarray:
        return 0.75 ** 2 * np.eye(2)

    def initial_point(self) -> ConditioningPoint:
        return np.zeros(2)


def bivariate_linear_adapter(data: Dataset) -> BivariateLinearAdapter:
    return BivariateLinearAdapter(data)
