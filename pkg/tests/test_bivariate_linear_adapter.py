import math
from unittest import TestCase

import numpy as np

from condlgm import (
    DataError,
    Dataset,
    SamplerConfig,
    bivariate_linear_adapter,
    mix_marginals,
    run_amis,
    run_is,
    simulate_dataset,
)
from tests.resources.oracles import (
    bivariate_design,
    conjugate_linear_posterior,
    conjugate_marginal_cdf,
    kolmogorov_distance,
    weighted_standard_errors,
)


class TestBivariateLinearAdapter(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.data = simulate_dataset('bivariate', 2020)
        cls.target = bivariate_linear_adapter(cls.data)

    def test_conditional_model(self):
        z = np.array([0.5, -0.25])
        model = self.target.build_model(z)
        expected = (self.data['y'] - 0.5 * self.data['x1']
                    + 0.25 * self.data['x2'])
        np.testing.assert_allclose(expected, model.y)
        self.assertEqual(('beta0',), model.fixed_names)
        self.assertEqual('tau', model.hyperparameter)
        self.assertEqual(('beta1', 'beta2'), self.target.names)

    def test_priors_and_proposal(self):
        self.assertAlmostEqual(2 * 0.5 * math.log(1e-6 / (2 * math.pi)),
                               self.target.log_prior([0.0, 0.0]))
        proposal = self.target.default_proposal()
        np.testing.assert_array_equal(5.0 * np.eye(2), proposal.sigma)
        np.testing.assert_array_equal(0.5625 * np.eye(2),
                                      self.target.default_mh_step())

    def test_fit_at_the_truth(self):
        truth = self.data.truth
        fit = self.target.fit(np.array([truth['beta1'], truth['beta2']]))
        beta0 = fit.marginals['beta0']
        self.assertLess(abs(beta0.mean() - truth['beta0']), 3 * beta0.sd())
        self.assertAlmostEqual(1.0, fit.hyper_marginal.integral(), places=8)
        self.assertLess(abs(math.log(fit.means['tau'])), 0.6)

    def test_importance_sampling_against_conjugate_posterior(self):
        cfg = SamplerConfig(method='is', n0=300, n=800, seed=2021)
        result = run_is(self.target, self.target.default_proposal(), cfg)
        weights = result.weights
        location, scale, df = conjugate_linear_posterior(
            self.data['y'], bivariate_design(self.data))
        errors = weighted_standard_errors(result.points, weights)
        for k in range(2):
            self.assertLess(abs(result.mean()[k] - location[k + 1]),
                            4 * errors[k])
            cdf = conjugate_marginal_cdf(self.data['y'],
                                         bivariate_design(self.data), k + 1)
            self.assertLess(kolmogorov_distance(result.points[:, k], weights,
                                                cdf), 0.08)
        np.testing.assert_allclose(np.diag(df / (df - 2) * scale)[1:],
                                   np.diag(result.cov()), rtol=0.3)

        beta0 = mix_marginals(result, 'beta0')
        self.assertLess(abs(beta0.mean() - location[0]),
                        0.25 * math.sqrt(scale[0, 0]))

    def test_adaptive_sampling_against_conjugate_posterior(self):
        cfg = SamplerConfig(method='amis', schedule=(150,) * 8, seed=2022,
                            workers=4)
        result = run_amis(self.target, self.target.default_proposal(), cfg)
        weights = result.weights
        design = bivariate_design(self.data)
        location, _, _ = conjugate_linear_posterior(self.data['y'], design)
        errors = weighted_standard_errors(result.points, weights)
        for k in range(2):
            self.assertLess(abs(result.mean()[k] - location[k + 1]),
                            3 * errors[k])
            cdf = conjugate_marginal_cdf(self.data['y'], design, k + 1)
            self.assertLess(kolmogorov_distance(result.points[:, k], weights,
                                                cdf), 0.08)

    def test_missing_covariate(self):
        data = Dataset({'y': [1.0, 2.0, 3.0], 'x1': [0.1, np.nan, 0.3],
                        'x2': [1.0, 2.0, 3.0]})
        with self.assertRaises(DataError):
            bivariate_linear_adapter(data)
        with self.assertRaises(DataError):
            bivariate_linear_adapter(Dataset({'y': [1.0], 'x1': [1.0]}))
