from unittest import TestCase

import numpy as np

from condlgm import ConditionalModel, Rw2Term, gaussian_approximation


class TestGaussianApproximation(TestCase):
    def test_gaussian_likelihood_converges_in_one_step(self):
        rng = np.random.default_rng(11)
        model = ConditionalModel(y=rng.standard_normal(20),
                                 design=np.column_stack(
                                     [np.ones(20), rng.uniform(size=20)]),
                                 fixed_names=('b0', 'b1'))
        for theta in (-2.0, 0.0, 3.0):
            approx = gaussian_approximation(model, theta)
            self.assertTrue(approx.converged)
            self.assertEqual(1, approx.iterations)

    def test_symmetric_posterior(self):
        model = ConditionalModel(y=[0.0], design=[1.0], fixed_names=('b0',),
                                 noise_log_precision=0.0)
        approx = gaussian_approximation(model)
        self.assertAlmostEqual(0.0, approx.mode[0], delta=1e-6)

    def test_matches_generalized_least_squares(self):
        rng = np.random.default_rng(12)
        n = 30
        design = np.column_stack([np.ones(n), rng.standard_normal(n)])
        y = design @ [0.5, -1.0] + rng.standard_normal(n)
        log_precision = rng.uniform(-1.0, 2.0, n)
        model = ConditionalModel(y=y, design=design, fixed_names=('a', 'b'),
                                 family='gaussian-heteroscedastic',
                                 log_precision=log_precision,
                                 fixed_prior_precision=0.01)
        weights = np.exp(log_precision)
        normal = design.T @ (weights[:, None] * design) + 0.01 * np.eye(2)
        expected = np.linalg.solve(normal, design.T @ (weights * y))
        approx = gaussian_approximation(model)
        np.testing.assert_allclose(expected, approx.mode, rtol=0, atol=1e-8)

    def test_constrained_mode(self):
        rng = np.random.default_rng(13)
        n = 40
        index = np.arange(n) % 8
        smooth = Rw2Term(index=index, n_nodes=8)
        model = ConditionalModel(y=np.sin(index) + rng.standard_normal(n),
                                 design=np.ones(n), fixed_names=('mu0',),
                                 noise_log_precision=0.0, smooth=smooth)
        approx = gaussian_approximation(model, theta=1.0)
        self.assertTrue(approx.converged)
        self.assertLess(abs(np.sum(approx.mode[1:])), 1e-10)

    def test_missing_response_has_no_influence(self):
        design = np.column_stack([np.ones(4), [0.0, 1.0, 2.0, 3.0]])
        with_missing = ConditionalModel(y=[1.0, np.nan, 2.0, 4.0],
                                        design=design,
                                        fixed_names=('a', 'b'),
                                        noise_log_precision=0.0)
        dropped = ConditionalModel(y=[1.0, 2.0, 4.0], design=design[[0, 2, 3]],
                                   fixed_names=('a', 'b'),
                                   noise_log_precision=0.0)
        np.testing.assert_allclose(gaussian_approximation(dropped).mode,
                                   gaussian_approximation(with_missing).mode)

    def test_theta_required(self):
        model = ConditionalModel(y=[0.0, 1.0], design=np.ones(2),
                                 fixed_names=('b0',))
        with self.assertRaises(ValueError):
            gaussian_approximation(model)
