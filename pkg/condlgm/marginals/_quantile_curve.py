import numpy as np
from scipy.special import ndtri

from condlgm._exceptions import InvalidDimensionError
from condlgm._types import ArrayLike, Vector


def quantile_curve(mu0: float, f: ArrayLike, x: ArrayLike, alpha: float,
                   beta: float, p: float,
                   literal_sqrt: bool = False) -> Vector:
    """
    The ``p`` quantile of ``y`` at every ``x`` for the heteroscedastic model
    ``y(x) ~ N(mu0 + f(x), sigma(x)^2)`` with
    ``log sigma(x) = -(alpha + beta x) / 2``:

        y_p(x) = mu0 + f(x) + sigma(x) z_p

    With ``literal_sqrt``, ``sigma(x) = sqrt(exp(-(alpha + beta x) / 2))``
    is used instead.
    :param mu0: the intercept.
    :param f: the smooth effect at every ``x``.
    :param x: the covariate values.
    :param alpha: the log precision intercept.
    :param beta: the log precision slope.
    :param p: the probability, strictly between 0 and 1.
    :param literal_sqrt: whether to use the square root variant.
    :return: the quantile curve.
    """
    if not 0 < p < 1:
        raise ValueError('The probability must lie in (0, 1), got {}.'
                         .format(p))
    f = np.atleast_1d(np.asarray(f, dtype=float))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if f.shape != x.shape:
        raise InvalidDimensionError('{} values of f for {} values of x.'
                                    .format(len(f), len(x)))
    log_sd = -0.5 * (alpha + beta * x)
    if literal_sqrt:
        log_sd = 0.5 * log_sd
    return mu0 + f + np.exp(log_sd) * ndtri(p)
