import typing

import numpy as np
from scipy.special import expit

from condlgm._exceptions import DataError
from condlgm.models._dataset import Dataset


BIVARIATE_BETA = (1.0, 1.0, -1.0)
LASSO_BETA = (2.0, 0.0, -1.5, 0.0, 0.5)
LASSO_INTERCEPT = 1.0
MISSING_X_COUNT = 9
MISSING_Y_COUNT = 3
QUANTILE_ALPHA = 7.8
QUANTILE_BETA = -4.6


def simulate_bivariate(rng: np.random.Generator, n: int) -> Dataset:
    x1 = rng.uniform(0.0, 1.0, n)
    x2 = rng.uniform(0.0, 1.0, n)
    beta0, beta1, beta2 = BIVARIATE_BETA
    y = beta0 + beta1 * x1 + beta2 * x2 + rng.standard_normal(n)
    truth = {'beta0': beta0, 'beta1': beta1, 'beta2': beta2, 'tau': 1.0}
    return Dataset({'y': y, 'x1': x1, 'x2': x2}, truth)


def simulate_lasso(rng: np.random.Generator, n: int) -> Dataset:
    x = rng.standard_normal((n, len(LASSO_BETA)))
    x = (x - x.mean(axis=0)) / x.std(axis=0)
    y = LASSO_INTERCEPT + x @ np.array(LASSO_BETA) + rng.standard_normal(n)
    columns = {'y': y}
    truth = {'beta0': LASSO_INTERCEPT}
    for k, value in enumerate(LASSO_BETA):
        columns['x{}'.format(k + 1)] = x[:, k]
        truth['beta_x{}'.format(k + 1)] = value
    return Dataset(columns, truth)


def simulate_missing(rng: np.random.Generator, n: int) -> Dataset:
    if n < MISSING_X_COUNT + MISSING_Y_COUNT + 3:
        raise DataError('The missing covariate generator needs n >= {}, got '
                        '{}.'.format(MISSING_X_COUNT + MISSING_Y_COUNT + 3, n))
    x = rng.normal(2.0, 1.0, n)
    y = 1.0 + 2.0 * x + rng.normal(0.0, 0.5, n)
    rows = rng.permutation(n)
    missing_x = np.sort(rows[:MISSING_X_COUNT])
    missing_y = np.sort(rows[MISSING_X_COUNT:MISSING_X_COUNT
                             + MISSING_Y_COUNT])
    truth = {'beta0': 1.0, 'beta1': 2.0, 'tau': 4.0}
    truth.update({'x_{}'.format(row): float(x[row]) for row in missing_x})
    x[missing_x] = np.nan
    y[missing_y] = np.nan
    return Dataset({'y': y, 'x': x}, truth)


def simulate_quantile(rng: np.random.Generator, n: int) -> Dataset:
    x = np.sort(rng.uniform(0.0, 1.0, n))
    mean = -0.8 * expit(12.0 * (x - 0.6))
    sd = np.exp(-0.5 * (QUANTILE_ALPHA + QUANTILE_BETA * x))
    y = mean + sd * rng.standard_normal(n)
    truth = {'alpha': QUANTILE_ALPHA, 'beta': QUANTILE_BETA, 'mean': mean}
    return Dataset({'x': x, 'y': y}, truth)


GENERATORS = {
    'bivariate': (simulate_bivariate, 100),
    'lasso': (simulate_lasso, 100),
    'missing': (simulate_missing, 25),
    'quantile': (simulate_quantile, 221),
}


def simulate_dataset(model_id: str, seed: int,
                     n: typing.Optional[int] = None) -> Dataset:
    """
    Generate the synthetic dataset of a shipped model. The same ``seed``
    always gives the same data.
    :param model_id: one of ``bivariate``, ``lasso``, ``missing`` and
    ``quantile``.
    :param seed: the seed of the generator.
    :param n: the number of rows; each model has its own default.
    :return: a ``Dataset`` with the generating values in ``truth``.
    """
    if model_id not in GENERATORS:
        raise DataError('Unknown model {}; expected one of {}.'
                        .format(model_id, sorted(GENERATORS)))
    generator, default_n = GENERATORS[model_id]
    n = default_n if n is None else int(n)
    if n < 3:
        raise DataError('A dataset needs at least 3 rows, got {}.'.format(n))
    return generator(np.random.default_rng(seed), n)
