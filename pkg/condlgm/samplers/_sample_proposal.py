import typing

import numpy as np

from condlgm._types import STUDENT_T, ConditioningPoint
from condlgm.samplers._proposal_params import ProposalParams


def sample_proposal(p: ProposalParams, rng: np.random.Generator,
                    size: typing.Optional[int] = None) -> ConditioningPoint:
    """
    Draw from the proposal ``p``. The Student-t family is drawn as a scale
    mixture: a Gaussian draw divided by ``sqrt(chi2(nu) / nu)``.
    :param p: the proposal.
    :param rng: the random stream to draw from.
    :param size: the number of draws; ``None`` gives a single vector.
    :return: a vector of length ``p.dim`` or an array of shape
    ``(size, p.dim)``.
    """
    n = 1 if size is None else size
    normal = rng.standard_normal((n, p.dim)) @ p.cholesky.T
    if p.family == STUDENT_T:
        scale = np.sqrt(rng.chisquare(p.nu, size=n) / p.nu)
        normal = normal / scale[:, None]
    draws = p.mu + normal
    return draws[0] if size is None else draws
