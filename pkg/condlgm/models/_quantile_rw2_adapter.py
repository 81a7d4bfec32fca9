import numpy as np

from condlgm._exceptions import DataError
from condlgm._types import GAUSSIAN_HETEROSCEDASTIC, ConditioningPoint
from condlgm.fitter._conditional_model import ConditionalModel, Rw2Term
from condlgm.models._dataset import Dataset
from condlgm.models._priors import gaussian_log_prior
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._target_adapter import TargetAdapter


COLUMNS = ('x', 'y')
DEFAULT_BINS = 50
VAGUE_PRECISION = 0.001


def bin_covariate(x: np.ndarray, n_bins: int):
    """
    Assign every ``x`` to one of ``n_bins`` equal width bins.
    :return: the bin index of every value and the bin centers.
    """
    lower, upper = float(np.min(x)), float(np.max(x))
    width = (upper - lower) / n_bins
    if not width > 0:
        raise DataError('The covariate x is constant; it cannot be binned.')
    index = np.minimum(((x - lower) / width).astype(np.int64), n_bins - 1)
    centers = lower + width * (np.arange(n_bins) + 0.5)
    return index, centers


class QuantileRw2Adapter(TargetAdapter):
    """
    ``y_i ~ N(mu0 + f(x_i), sigma_i^2)`` with a second order random walk on
    the binned ``f`` and ``log sigma_i = -(alpha + beta x_i) / 2``, i.e. the
    observation log precision is ``alpha + beta x_i``. The conditioning
    parameters are ``(alpha, beta)``; ``mu0``, ``f`` and the random walk
    precision are left to the fitter.
    """

    def __init__(self, data: Dataset, n_bins: int = DEFAULT_BINS):
        data.require(*COLUMNS)
        self.x = data['x']
        self.y = data['y']
        if np.any(np.isnan(self.x)):
            raise DataError('The covariate x may not be missing.')
        if n_bins < 3:
            raise DataError('A second order random walk needs at least 3 '
                            'bins, got {}.'.format(n_bins))
        self.index, self.centers = bin_covariate(self.x, n_bins)
        occupied = len(np.unique(self.index))
        if occupied < 3:
            raise DataError('The covariate fills {} bin(s); at least 3 '
                            'distinct bins are needed.'.format(occupied))
        self.n_bins = n_bins

    @property
    def names(self):
        return 'alpha', 'beta'

    def log_prior(self, z: ConditioningPoint) -> float:
        return gaussian_log_prior(z, 0.0, VAGUE_PRECISION)

    def build_model(self, z: ConditioningPoint) -> ConditionalModel:
        alpha, beta = z
        smooth = Rw2Term(index=self.index, n_nodes=self.n_bins,
                         locations=self.centers, name='f')
        return ConditionalModel(y=self.y,
                                design=np.ones((len(self.y), 1)),
                                fixed_names=('mu0',),
                                family=GAUSSIAN_HETEROSCEDASTIC,
                                log_precision=alpha + beta * self.x,
                                smooth=smooth,
                                fixed_prior_precision=VAGUE_PRECISION)

    def default_proposal(self) -> ProposalParams:
        return ProposalParams.student_t(np.zeros(2), 10.0 * np.eye(2), nu=3.0)

    def default_mh_step(self) -> np.ndarray:
        return 0.3 ** 2 * np.eye(2)

    def initial_point(self) -> ConditioningPoint:
        return np.zeros(2)


def quantile_rw2_adapter(data: Dataset,
                         n_bins: int = DEFAULT_BINS) -> QuantileRw2Adapter:
    return QuantileRw2Adapter(data, n_bins)
