from unittest import TestCase

import numpy as np

from condlgm import DataError, simulate_dataset


class TestSimulateDataset(TestCase):
    def test_reproducible(self):
        for model_id in ('bivariate', 'lasso', 'missing', 'quantile'):
            first = simulate_dataset(model_id, 7)
            second = simulate_dataset(model_id, 7)
            other = simulate_dataset(model_id, 8)
            self.assertEqual(first.names, second.names)
            for name in first.names:
                np.testing.assert_array_equal(first[name], second[name])
            self.assertFalse(np.array_equal(first['y'], other['y'],
                                            equal_nan=True))

    def test_bivariate(self):
        data = simulate_dataset('bivariate', 1)
        self.assertEqual(('y', 'x1', 'x2'), data.names)
        self.assertEqual(100, data.n_rows)
        self.assertEqual(-1.0, data.truth['beta2'])
        self.assertEqual(50, simulate_dataset('bivariate', 1, n=50).n_rows)

    def test_lasso_covariates_are_standardized(self):
        data = simulate_dataset('lasso', 2)
        self.assertEqual(('y', 'x1', 'x2', 'x3', 'x4', 'x5'), data.names)
        for k in range(1, 6):
            column = data['x{}'.format(k)]
            self.assertAlmostEqual(0.0, np.mean(column), places=12)
            self.assertAlmostEqual(1.0, np.std(column), places=12)
        self.assertEqual(0.0, data.truth['beta_x2'])
        self.assertEqual(1.0, data.truth['beta0'])

    def test_missing(self):
        data = simulate_dataset('missing', 3)
        self.assertEqual(25, data.n_rows)
        missing_x = np.flatnonzero(data.missing_mask('x'))
        missing_y = np.flatnonzero(data.missing_mask('y'))
        self.assertEqual(9, len(missing_x))
        self.assertEqual(3, len(missing_y))
        self.assertFalse(set(missing_x) & set(missing_y))
        self.assertSetEqual({'x_{}'.format(row) for row in missing_x},
                            {key for key in data.truth
                             if key.startswith('x_')})
        with self.assertRaises(DataError):
            simulate_dataset('missing', 3, n=10)

    def test_quantile(self):
        data = simulate_dataset('quantile', 4)
        self.assertEqual(221, data.n_rows)
        self.assertTrue(np.all(np.diff(data['x']) >= 0))
        self.assertEqual(7.8, data.truth['alpha'])
        self.assertEqual(-4.6, data.truth['beta'])
        self.assertEqual((221,), data.truth['mean'].shape)
        # The noise grows with x.
        residual = data['y'] - data.truth['mean']
        self.assertLess(np.std(residual[:60]), np.std(residual[-60:]))

    def test_invalid(self):
        with self.assertRaises(DataError):
            simulate_dataset('poisson', 0)
        with self.assertRaises(DataError):
            simulate_dataset('bivariate', 0, n=2)
