import math
from unittest import TestCase

import numpy as np

from condlgm import (
    DataError,
    Dataset,
    SamplerConfig,
    missing_covariate_adapter,
    run_amis,
    simulate_dataset,
    weighted_ecdf,
)


class TestMissingCovariateAdapter(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.data = simulate_dataset('missing', 41)
        cls.target = missing_covariate_adapter(cls.data)

    def test_names_follow_the_missing_rows(self):
        expected = sorted(key for key in self.data.truth
                          if key.startswith('x_'))
        self.assertEqual(9, self.target.dim)
        self.assertSetEqual(set(expected), set(self.target.names))

    def test_prior(self):
        observed = self.data['x'][~self.data.missing_mask('x')]
        self.assertAlmostEqual(np.mean(observed), self.target.prior_mean)
        self.assertAlmostEqual(2.0 * np.std(observed), self.target.prior_sd)
        z = np.full(9, self.target.prior_mean)
        expected = -9 * math.log(self.target.prior_sd * math.sqrt(2 * math.pi))
        self.assertAlmostEqual(expected, self.target.log_prior(z))

    def test_constant_covariate(self):
        data = Dataset({'y': [1.0, 2.0, 3.0, 4.0],
                        'x': [1.5, np.nan, 1.5, 1.5]})
        target = missing_covariate_adapter(data)
        self.assertEqual(1.5, target.prior_mean)
        self.assertEqual(1.0, target.prior_sd)
        np.testing.assert_array_equal([1.5], target.initial_point())

    def test_completed_design(self):
        z = np.arange(9, dtype=float)
        model = self.target.build_model(z)
        completed = self.target.completed(z)
        self.assertFalse(np.any(np.isnan(completed)))
        np.testing.assert_array_equal(z, completed[self.target.missing])
        self.assertEqual(('beta0', 'beta1'), model.fixed_names)
        self.assertEqual(22, model.n_observed)

    def test_fit_at_the_truth(self):
        truth = np.array([self.data.truth[name] for name in self.target.names])
        evaluation = self.target.evaluate(truth)
        self.assertFalse(evaluation.failed)
        beta1 = evaluation.fit.marginals['beta1']
        self.assertLess(abs(beta1.mean() - 2.0), 3 * beta1.sd())

    def test_nothing_to_impute(self):
        with self.assertRaises(DataError):
            missing_covariate_adapter(Dataset({'y': [1.0, 2.0],
                                               'x': [0.0, 1.0]}))
        with self.assertRaises(DataError):
            missing_covariate_adapter(Dataset({'y': [1.0, 2.0],
                                               'x': [np.nan, np.nan]}))

    def test_proposal_follows_the_regression(self):
        proposal = self.target.default_proposal()
        mu, sd = self.target.imputation_moments()
        self.assertEqual('student_t', proposal.family)
        self.assertEqual(3.0, proposal.nu)
        np.testing.assert_array_equal(mu, proposal.mu)
        np.testing.assert_allclose((1.5 * sd) ** 2, np.diag(proposal.sigma))
        np.testing.assert_array_equal(mu, self.target.initial_point())
        truth = np.array([self.data.truth[name] for name in self.target.names])
        self.assertTrue(np.all(np.abs(mu - truth) < 4 * sd))
        self.assertTrue(np.all(sd < 0.5 * self.target.prior_sd))

    def test_rows_without_response_use_the_prior(self):
        data = Dataset({'y': [3.0, np.nan, 7.0, 9.1, 11.0, 5.0],
                        'x': [1.0, np.nan, 3.0, 4.0, 5.0, np.nan]})
        target = missing_covariate_adapter(data)
        mu, sd = target.imputation_moments()
        self.assertEqual(target.prior_mean, mu[0])
        self.assertEqual(target.prior_sd, sd[0])
        self.assertLess(abs(mu[1] - 2.0), 0.2)
        self.assertLess(sd[1], 0.5)

    def test_imputation_intervals_cover_the_truth(self):
        rates = []
        for seed in range(20):
            data = simulate_dataset('missing', 600 + seed)
            target = missing_covariate_adapter(data)
            target.n_theta_nodes = 3
            cfg = SamplerConfig(method='amis', schedule=(80, 80), seed=seed,
                                workers=4)
            result = run_amis(target, target.default_proposal(), cfg)
            weights = result.weights
            covered = []
            for k, name in enumerate(target.names):
                values, cumulative = weighted_ecdf(result.points[:, k],
                                                   weights)
                lower = values[np.searchsorted(cumulative, 0.025)]
                upper = values[min(np.searchsorted(cumulative, 0.975),
                                   len(values) - 1)]
                covered.append(lower <= data.truth[name] <= upper)
            rates.append(np.mean(covered))
        self.assertGreaterEqual(np.mean(rates), 0.85)
        self.assertLessEqual(np.mean(rates), 1.0)
