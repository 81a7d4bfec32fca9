import typing
from dataclasses import dataclass

import numpy as np

from condlgm._exceptions import InvalidDimensionError
from condlgm._types import GAUSSIAN, STUDENT_T, ArrayLike, Matrix


FAMILIES = (GAUSSIAN, STUDENT_T)


@dataclass(frozen=True, eq=False)
class ProposalParams:
    """
    A multivariate Gaussian or Student-t sampling distribution with location
    ``mu``, scale matrix ``sigma`` and, for the t family, ``nu`` degrees of
    freedom.
    """
    family: str
    mu: np.ndarray
    sigma: np.ndarray
    nu: typing.Optional[float] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError('Unknown proposal family {}; expected one of {}.'
                             .format(self.family, FAMILIES))
        mu = np.atleast_1d(np.asarray(self.mu, dtype=float))
        sigma = np.atleast_2d(np.asarray(self.sigma, dtype=float))
        if mu.ndim != 1 or sigma.shape != (len(mu), len(mu)):
            raise InvalidDimensionError('A location of length {} needs a {}x{} '
                                        'scale, got {}.'
                                        .format(len(mu), len(mu), len(mu),
                                                sigma.shape))
        if not np.allclose(sigma, sigma.T, rtol=1e-10, atol=0.0):
            raise ValueError('The scale matrix must be symmetric.')
        try:
            cholesky = np.linalg.cholesky(sigma)
        except np.linalg.LinAlgError as err:
            raise ValueError('The scale matrix must be positive definite.'
                             ) from err
        if self.family == STUDENT_T:
            if self.nu is None or not self.nu > 0:
                raise ValueError('A Student-t proposal needs nu > 0, got {}.'
                                 .format(self.nu))
            object.__setattr__(self, 'nu', float(self.nu))
        elif self.nu is not None:
            raise ValueError('nu only applies to the {} family.'
                             .format(STUDENT_T))
        object.__setattr__(self, 'mu', mu)
        object.__setattr__(self, 'sigma', sigma)
        object.__setattr__(self, '_cholesky', cholesky)

    @classmethod
    def gaussian(cls, mu: ArrayLike, sigma: ArrayLike) -> 'ProposalParams':
        return cls(GAUSSIAN, mu, sigma)

    @classmethod
    def student_t(cls, mu: ArrayLike, sigma: ArrayLike,
                  nu: float) -> 'ProposalParams':
        return cls(STUDENT_T, mu, sigma, nu)

    @property
    def dim(self) -> int:
        return len(self.mu)

    @property
    def cholesky(self) -> Matrix:
        return getattr(self, '_cholesky')

    @property
    def covariance(self) -> Matrix:
        """
        The covariance of the distribution: ``sigma`` for the Gaussian family
        and ``nu / (nu - 2) sigma`` for the t family.
        """
        if self.family == GAUSSIAN:
            return self.sigma
        if self.nu <= 2:
            raise ValueError('A Student-t with nu = {} has no covariance.'
                             .format(self.nu))
        return self.nu / (self.nu - 2.0) * self.sigma

    def with_moments(self, mu: ArrayLike,
                     sigma: ArrayLike) -> 'ProposalParams':
        """
        Return a proposal of the same family (and nu) with new moments.
        """
        return ProposalParams(self.family, mu, sigma, self.nu)

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        return {
            'family': self.family,
            'nu': self.nu,
            'mu': self.mu.tolist(),
            'sigma': self.sigma.tolist(),
        }
