import math
from unittest import TestCase
from unittest.mock import patch

import numpy as np
from scipy import integrate, stats

from condlgm import (
    ConditionalFitError,
    ConditionalModel,
    Rw2Term,
    ThetaGrid,
    conditional_log_evidence,
    exact_gaussian_evidence,
    gaussian_approximation,
    latent_marginals,
)


def random_model(rng):
    n = int(rng.integers(3, 51))
    p = int(rng.integers(1, 5))
    design = np.column_stack([np.ones(n), rng.standard_normal((n, p - 1))])
    y = design @ rng.standard_normal(p) + rng.standard_normal(n)
    prior_precision = rng.uniform(0.1, 2.0, p)
    if rng.uniform() < 0.5:
        model = ConditionalModel(y=y, design=design,
                                 fixed_names=tuple('b{}'.format(k)
                                                   for k in range(p)),
                                 fixed_prior_precision=prior_precision)
        return model, float(rng.uniform(-1.0, 1.0))
    model = ConditionalModel(y=y, design=design,
                             fixed_names=tuple('b{}'.format(k)
                                               for k in range(p)),
                             noise_log_precision=float(rng.uniform(-1, 1)),
                             fixed_prior_precision=prior_precision)
    return model, 0.0


class TestConditionalLogEvidence(TestCase):
    def test_laplace_is_exact_for_gaussian_models(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            model, theta = random_model(rng)
            exact = exact_gaussian_evidence(
                model, theta if model.hyperparameter else None)
            laplace = conditional_log_evidence(model, ThetaGrid.single(theta))
            self.assertLess(abs(laplace - exact) / abs(exact), 1e-8)

    def test_exact_with_constrained_random_walk(self):
        rng = np.random.default_rng(22)
        n = 30
        index = np.arange(n) % 6
        model = ConditionalModel(y=np.cos(index) + rng.standard_normal(n),
                                 design=np.ones(n), fixed_names=('mu0',),
                                 noise_log_precision=0.0,
                                 smooth=Rw2Term(index=index, n_nodes=6),
                                 fixed_prior_precision=1.0)
        exact = exact_gaussian_evidence(model, 0.5)
        laplace = conditional_log_evidence(model, ThetaGrid.single(0.5))
        self.assertLess(abs(laplace - exact) / abs(exact), 1e-6)

    def test_single_observation_against_quadrature(self):
        model = ConditionalModel(y=[0.0], design=[1.0], fixed_names=('b0',),
                                 noise_log_precision=0.0)
        prior_sd = math.sqrt(1000.0)
        value, _ = integrate.quad(
            lambda x: stats.norm.pdf(0.0, x, 1.0)
            * stats.norm.pdf(x, 0.0, prior_sd),
            -60.0, 60.0, points=[0.0], epsabs=0.0, epsrel=1e-12, limit=200)
        log_evidence = conditional_log_evidence(model, ThetaGrid.single())
        self.assertAlmostEqual(math.log(value), log_evidence, delta=1e-6)

    def test_change_of_units(self):
        rng = np.random.default_rng(23)
        n = 12
        design = np.column_stack([np.ones(n), rng.uniform(size=n)])
        y = design @ [1.0, 2.0] + 0.5 * rng.standard_normal(n)

        def evidence(scale):
            model = ConditionalModel(
                y=scale * y, design=design, fixed_names=('a', 'b'),
                noise_log_precision=math.log(4.0) - 2.0 * math.log(scale),
                fixed_prior_precision=0.1 / scale ** 2)
            return conditional_log_evidence(model, ThetaGrid.single())

        self.assertAlmostEqual(evidence(1.0) - n * math.log(10.0),
                               evidence(10.0), delta=1e-8)

    def test_grid_sum(self):
        rng = np.random.default_rng(24)
        model = ConditionalModel(y=rng.standard_normal(15), design=np.ones(15),
                                 fixed_names=('b0',))
        grid = ThetaGrid([-0.5, 0.0, 0.5], np.log([0.2, 0.5, 0.3]))
        terms = [exact_gaussian_evidence(model, theta) + math.log(weight)
                 for theta, weight in zip([-0.5, 0.0, 0.5], [0.2, 0.5, 0.3])]
        expected = float(np.logaddexp.reduce(terms))
        self.assertAlmostEqual(expected, conditional_log_evidence(model, grid),
                               delta=1e-8)

    def test_failed_nodes_are_dropped(self):
        rng = np.random.default_rng(25)
        model = ConditionalModel(y=rng.standard_normal(15), design=np.ones(15),
                                 fixed_names=('b0',))
        grid = ThetaGrid([-0.5, 0.0, 0.5], np.zeros(3))

        def failing(model, theta, *args, **kwargs):
            if theta > 0.25:
                raise ConditionalFitError('no convergence')
            return gaussian_approximation(model, theta, *args, **kwargs)

        target = 'condlgm.fitter._conditional_log_evidence.' \
                 'gaussian_approximation'
        with patch(target, failing):
            log_evidence = conditional_log_evidence(model, grid)
            fit = latent_marginals(model, grid)
        terms = [exact_gaussian_evidence(model, theta) + math.log(1.5)
                 for theta in (-0.5, 0.0)]
        self.assertAlmostEqual(float(np.logaddexp.reduce(terms)),
                               log_evidence, delta=1e-8)
        self.assertTrue(fit.degraded)
        self.assertEqual(1, fit.n_failed_nodes)

    def test_all_nodes_failed(self):
        model = ConditionalModel(y=[0.0, 1.0], design=np.ones(2),
                                 fixed_names=('b0',))

        def failing(*args, **kwargs):
            raise ConditionalFitError('no convergence')

        target = 'condlgm.fitter._conditional_log_evidence.' \
                 'gaussian_approximation'
        with patch(target, failing):
            with self.assertRaises(ConditionalFitError):
                conditional_log_evidence(model, ThetaGrid.single())
