import math
from unittest import TestCase

import numpy as np

from condlgm import (
    ConditionalModel,
    Rw2Term,
    ThetaGrid,
    build_theta_grid,
    latent_marginals,
)


class TestLatentMarginals(TestCase):
    def setUp(self):
        rng = np.random.default_rng(51)
        self.design = np.column_stack([np.ones(20), rng.uniform(size=20)])
        self.y = self.design @ [1.0, -2.0] + 0.3 * rng.standard_normal(20)

    def test_single_node_moments(self):
        model = ConditionalModel(y=self.y, design=self.design,
                                 fixed_names=('b0', 'b1'),
                                 noise_log_precision=math.log(1 / 0.09))
        precision = self.design.T @ self.design / 0.09 + 0.001 * np.eye(2)
        mean = np.linalg.solve(precision, self.design.T @ self.y / 0.09)
        sds = np.sqrt(np.diag(np.linalg.inv(precision)))

        fit = latent_marginals(model, ThetaGrid.single())
        for k, name in enumerate(('b0', 'b1')):
            self.assertAlmostEqual(mean[k], fit.means[name], delta=1e-8)
            marginal = fit.marginals[name]
            self.assertAlmostEqual(mean[k], marginal.mean(),
                                   delta=1e-6 * sds[k])
            self.assertAlmostEqual(sds[k], marginal.sd(), delta=0.01 * sds[k])
        self.assertIsNone(fit.hyper_marginal)
        self.assertFalse(fit.degraded)
        self.assertEqual(0, fit.n_failed_nodes)

    def test_mixture_over_grid(self):
        model = ConditionalModel(y=self.y, design=self.design,
                                 fixed_names=('b0', 'b1'))
        fit = latent_marginals(model, build_theta_grid(model))
        for name in ('b0', 'b1', 'tau'):
            self.assertAlmostEqual(1.0, fit.marginals[name].integral(),
                                   places=10)
        self.assertIs(fit.hyper_marginal, fit.marginals['tau'])
        # Noise sd 0.3 gives a precision near 11.
        self.assertLess(1 / 0.09 / 3.0, fit.means['tau'])
        self.assertLess(fit.means['tau'], 3.0 / 0.09)
        self.assertLess(abs(fit.means['b1'] + 2.0),
                        4.0 * fit.marginals['b1'].sd())

    def test_smooth_summary(self):
        rng = np.random.default_rng(52)
        index = np.repeat(np.arange(8), 4)
        locations = np.linspace(0.0, 1.0, 8)
        y = 1.0 + np.sin(2 * np.pi * locations[index]) \
            + 0.2 * rng.standard_normal(32)
        model = ConditionalModel(y=y, design=np.ones(32), fixed_names=('mu0',),
                                 noise_log_precision=math.log(25.0),
                                 smooth=Rw2Term(index=index, n_nodes=8,
                                                locations=locations))
        fit = latent_marginals(model, build_theta_grid(model, 5))
        smooth = fit.smooth
        self.assertEqual('f', smooth.name)
        np.testing.assert_array_equal(locations, smooth.locations)
        self.assertEqual((8,), smooth.means.shape)
        self.assertTrue(np.all(smooth.sds > 0))
        self.assertLess(abs(np.sum(smooth.means)), 1e-8)
        self.assertIn('tau_f', fit.marginals)
        self.assertLess(abs(fit.means['mu0'] - 1.0), 0.2)
