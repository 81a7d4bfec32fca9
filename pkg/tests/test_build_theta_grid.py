import math
from unittest import TestCase
from unittest.mock import patch

import numpy as np
from scipy import integrate

from condlgm import (
    ConditionalModel,
    build_theta_grid,
    conditional_log_evidence,
    exact_gaussian_evidence,
)


def noise_model(n=40, seed=41):
    rng = np.random.default_rng(seed)
    y = 2.0 + 0.5 * rng.standard_normal(n)
    return ConditionalModel(y=y, design=np.ones(n), fixed_names=('mu',))


class TestBuildThetaGrid(TestCase):
    def test_without_hyperparameter(self):
        model = ConditionalModel(y=[1.0, 2.0], design=np.ones(2),
                                 fixed_names=('mu',), noise_log_precision=0.0)
        grid = build_theta_grid(model)
        self.assertEqual(1, len(grid))
        self.assertEqual(0.0, grid.nodes[0])
        self.assertFalse(grid.degraded)

    def test_mode_and_sd(self):
        model = noise_model()
        y = model.y
        # Flat location prior: log pi(theta | y) is
        # ((n + 1) / 2) theta - exp(theta) (S / 2 + b) up to a constant.
        n = len(y)
        half_ss = 0.5 * np.sum((y - y.mean()) ** 2) + model.hyper_prior.rate
        expected_mode = math.log(0.5 * (n + 1) / half_ss)
        grid = build_theta_grid(model)
        self.assertAlmostEqual(expected_mode, grid.mode, delta=0.02)
        self.assertAlmostEqual(math.sqrt(2.0 / (n + 1)), grid.sd, delta=0.01)

    def test_symmetric_nodes(self):
        grid = build_theta_grid(noise_model())
        self.assertEqual(9, len(grid))
        self.assertAlmostEqual(grid.mode, grid.nodes[4], places=12)
        np.testing.assert_allclose(grid.nodes - grid.mode,
                                   -(grid.nodes - grid.mode)[::-1],
                                   atol=1e-12)
        np.testing.assert_allclose(np.diff(grid.nodes), 0.7 * grid.sd,
                                   rtol=1e-10)
        np.testing.assert_allclose(grid.normalized_weights(), 1.0 / 9)

    def test_span(self):
        model = noise_model()
        grid = build_theta_grid(model)
        self.assertAlmostEqual(2.8 * grid.sd, grid.nodes[-1] - grid.mode,
                               places=10)
        wide = build_theta_grid(model, 11)
        self.assertAlmostEqual(3.5 * wide.sd, wide.nodes[-1] - wide.mode,
                               places=10)

    def test_single_node(self):
        grid = build_theta_grid(noise_model(), n_nodes=1)
        self.assertEqual(1, len(grid))
        self.assertEqual(grid.mode, grid.nodes[0])
        self.assertIsNotNone(grid.sd)

    def test_evidence_against_quadrature(self):
        model = noise_model(n=25, seed=42)
        grid = build_theta_grid(model)
        peak = exact_gaussian_evidence(model, grid.mode)
        value, _ = integrate.quad(
            lambda t: math.exp(exact_gaussian_evidence(model, t) - peak),
            grid.mode - 10.0 * grid.sd, grid.mode + 10.0 * grid.sd,
            epsabs=0.0, epsrel=1e-10, limit=200)
        expected = peak + math.log(value)
        self.assertAlmostEqual(expected, conditional_log_evidence(model, grid),
                               delta=0.05)

    def test_more_nodes_agree(self):
        model = noise_model(n=15, seed=43)
        coarse = conditional_log_evidence(model, build_theta_grid(model))
        fine = conditional_log_evidence(model, build_theta_grid(model, 25))
        self.assertAlmostEqual(fine, coarse, delta=0.05)

    def test_number_of_nodes(self):
        for n_nodes in (0, 2, 10, -3):
            with self.assertRaises(ValueError):
                build_theta_grid(noise_model(), n_nodes)

    def test_failed_search_degrades(self):
        model = noise_model()
        target = 'condlgm.fitter._build_theta_grid.minimize_scalar'
        with patch(target, side_effect=RuntimeError('no bracket')):
            with self.assertLogs('condlgm.fitter._build_theta_grid',
                                 level='WARNING'):
                grid = build_theta_grid(model)
        self.assertTrue(grid.degraded)
        self.assertEqual(1, len(grid))
        self.assertAlmostEqual(math.log(model.hyper_prior.mean),
                               grid.nodes[0])
