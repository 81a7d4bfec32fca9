import math

import numpy as np

from condlgm._types import ArrayLike


def gaussian_log_prior(z: ArrayLike, mean: ArrayLike = 0.0,
                       precision: ArrayLike = 1.0) -> float:
    """
    The log density of independent Gaussians, given by their precisions.
    """
    z = np.asarray(z, dtype=float)
    precision = np.broadcast_to(np.asarray(precision, dtype=float), z.shape)
    return float(np.sum(0.5 * np.log(precision / (2.0 * math.pi))
                        - 0.5 * precision * (z - mean) ** 2))


def laplace_log_prior(z: ArrayLike, lam: float) -> float:
    """
    The log density of independent Laplace(0, 1 / lam) variables:
    ``log(lam / 2) - lam |z|`` each.
    """
    z = np.asarray(z, dtype=float)
    return float(z.size * math.log(lam / 2.0) - lam * np.sum(np.abs(z)))
