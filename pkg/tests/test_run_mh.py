from unittest import TestCase

import numpy as np

from condlgm import (
    InvalidDimensionError,
    SamplerConfig,
    SamplerError,
    run_mh,
)
from tests.resources.toy_targets import (
    FailingToyTarget,
    FlatToyTarget,
    GaussianToyTarget,
    HalfFailingToyTarget,
    TruncatedToyTarget,
)


class TestRunMh(TestCase):
    def test_flat_target_accepts_everything(self):
        chain = run_mh(FlatToyTarget(), SamplerConfig(method='mh', n=500,
                                                      seed=31))
        self.assertEqual(1.0, chain.acceptance_rate)
        self.assertEqual(500, len(chain))
        self.assertEqual(50, chain.burn_in)
        self.assertEqual(551, chain.n_evaluated)
        self.assertEqual(500, len(np.unique(chain.points[:, 0])))

    def test_posterior_moments(self):
        target = GaussianToyTarget()
        chain = run_mh(target, SamplerConfig(method='mh', n=10000, seed=32))
        np.testing.assert_allclose(target.posterior_mean, chain.mean(),
                                   atol=0.08)
        np.testing.assert_allclose(target.posterior_cov, chain.cov(),
                                   atol=0.1)
        self.assertGreater(chain.acceptance_rate, 0.2)
        self.assertLess(chain.acceptance_rate, 0.8)

    def test_uniform_weights(self):
        chain = run_mh(GaussianToyTarget(),
                       SamplerConfig(method='mh', n=200, seed=33))
        np.testing.assert_allclose(np.full(200, 1 / 200), chain.weights)
        self.assertEqual('mh', chain.method)

    def test_reproducible(self):
        cfg = SamplerConfig(method='mh', n=100, seed=34)
        first = run_mh(GaussianToyTarget(), cfg)
        second = run_mh(GaussianToyTarget(), cfg)
        other = run_mh(GaussianToyTarget(),
                       SamplerConfig(method='mh', n=100, seed=35))
        np.testing.assert_array_equal(first.points, second.points)
        self.assertFalse(np.array_equal(first.points, other.points))

    def test_step_size(self):
        target = GaussianToyTarget()
        small = run_mh(target, SamplerConfig(method='mh', n=2000, seed=36,
                                             mh_step_sigma=0.01 * np.eye(2)))
        large = run_mh(target, SamplerConfig(method='mh', n=2000, seed=36,
                                             mh_step_sigma=25.0 * np.eye(2)))
        self.assertGreater(small.acceptance_rate, large.acceptance_rate)

    def test_stays_inside_the_support(self):
        target = TruncatedToyTarget()
        chain = run_mh(target, SamplerConfig(method='mh', n=1000, seed=37),
                       z0=[1.0, 0.0])
        self.assertTrue(np.all(chain.points[:, 0] > 0))

    def test_failed_fits_are_rejections(self):
        target = HalfFailingToyTarget()
        chain = run_mh(target, SamplerConfig(method='mh', n=1000, seed=38),
                       z0=[1.0, 0.0])
        self.assertGreater(chain.n_failed, 0)
        self.assertTrue(np.all(chain.points[:, 0] >= 0))

    def test_start_outside_the_support(self):
        with self.assertRaises(SamplerError):
            run_mh(TruncatedToyTarget(), SamplerConfig(method='mh', n=10))
        with self.assertRaises(SamplerError):
            run_mh(FailingToyTarget(), SamplerConfig(method='mh', n=10))

    def test_invalid_step(self):
        cfg = SamplerConfig(method='mh', n=10,
                            mh_step_sigma=[[1.0, 2.0], [2.0, 1.0]])
        with self.assertRaises(SamplerError):
            run_mh(GaussianToyTarget(), cfg)

    def test_dimension(self):
        with self.assertRaises(InvalidDimensionError):
            run_mh(GaussianToyTarget(), SamplerConfig(method='mh', n=10),
                   z0=[0.0, 0.0, 0.0])
        with self.assertRaises(InvalidDimensionError):
            run_mh(GaussianToyTarget(),
                   SamplerConfig(method='mh', n=10, mh_step_sigma=1.0))

    def test_method(self):
        with self.assertRaises(ValueError):
            run_mh(GaussianToyTarget(), SamplerConfig(method='is'))
