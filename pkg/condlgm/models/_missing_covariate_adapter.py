import math
import typing

import numpy as np

from condlgm._exceptions import DataError
from condlgm._types import GAUSSIAN, ConditioningPoint
from condlgm.fitter._conditional_model import ConditionalModel
from condlgm.models._dataset import Dataset
from condlgm.models._priors import gaussian_log_prior
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._target_adapter import TargetAdapter


COLUMNS = ('y', 'x')
PROPOSAL_NU = 3.0
PROPOSAL_INFLATION = 1.5


class MissingCovariateAdapter(TargetAdapter):
    """
    Linear regression of ``y`` on a covariate ``x`` with missing entries. The
    missing covariate values are the conditioning parameters, each with a
    Gaussian prior centered at the observed mean with twice the observed sd.
    Missing responses are left to the likelihood.

    The default proposal inverts a complete case regression of ``y`` on
    ``x``: a row with observed ``y`` is proposed around
    ``(y - b0) / b1``, combined with the prior. Rows without ``y`` (or data
    without a usable complete case fit) are proposed from the prior.
    """

    def __init__(self, data: Dataset):
        data.require(*COLUMNS)
        self.y = data['y']
        self.x = data['x']
        self.missing = np.flatnonzero(np.isnan(self.x))
        if not len(self.missing):
            raise DataError('The covariate x has no missing values; there is '
                            'nothing to impute.')
        observed = self.x[~np.isnan(self.x)]
        if len(observed) < 1:
            raise DataError('The covariate x has no observed values.')
        self.prior_mean = float(np.mean(observed))
        spread = float(np.std(observed))
        self.prior_sd = 2.0 * spread if spread > 0 else 1.0

    @property
    def names(self):
        return tuple('x_{}'.format(row) for row in self.missing)

    def completed(self, z: ConditioningPoint) -> np.ndarray:
        x = self.x.copy()
        x[self.missing] = z
        return x

    def log_prior(self, z: ConditioningPoint) -> float:
        return gaussian_log_prior(z, self.prior_mean, self.prior_sd ** -2)

    def build_model(self, z: ConditioningPoint) -> ConditionalModel:
        x = self.completed(np.asarray(z, dtype=float))
        return ConditionalModel(y=self.y,
                                design=np.column_stack([np.ones(len(x)), x]),
                                fixed_names=('beta0', 'beta1'),
                                family=GAUSSIAN)

    def default_proposal(self) -> ProposalParams:
        mu, sd = self.imputation_moments()
        return ProposalParams.student_t(
            mu, np.diag((PROPOSAL_INFLATION * sd) ** 2), PROPOSAL_NU)

    def imputation_moments(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        """
        Approximate posterior means and sds of the missing covariate values
        given the complete case regression estimates.
        """
        mu = np.full(self.dim, self.prior_mean)
        sd = np.full(self.dim, self.prior_sd)
        estimate = self._complete_case_fit()
        if estimate is None:
            return mu, sd
        intercept, slope, noise_sd = estimate
        prior_precision = self.prior_sd ** -2
        for k, row in enumerate(self.missing):
            if np.isnan(self.y[row]):
                continue
            precision = (slope / noise_sd) ** 2 + prior_precision
            mu[k] = (slope * (self.y[row] - intercept) / noise_sd ** 2
                     + self.prior_mean * prior_precision) / precision
            sd[k] = precision ** -0.5
        return mu, sd

    def _complete_case_fit(
            self) -> typing.Optional[typing.Tuple[float, float, float]]:
        rows = ~np.isnan(self.x) & ~np.isnan(self.y)
        x, y = self.x[rows], self.y[rows]
        if len(x) < 3 or np.ptp(x) == 0:
            return None
        design = np.column_stack([np.ones(len(x)), x])
        coefficients, *_ = np.linalg.lstsq(design, y, rcond=None)
        residual = y - design @ coefficients
        noise_sd = math.sqrt(float(residual @ residual) / (len(x) - 2))
        if not noise_sd > 0 or coefficients[1] == 0:
            return None
        return float(coefficients[0]), float(coefficients[1]), noise_sd

    def default_mh_step(self) -> np.ndarray:
        return np.diag((0.5 * self.imputation_moments()[1]) ** 2)

    def initial_point(self) -> ConditioningPoint:
        return self.imputation_moments()[0]


def missing_covariate_adapter(data: Dataset) -> MissingCovariateAdapter:
    return MissingCovariateAdapter(data)
