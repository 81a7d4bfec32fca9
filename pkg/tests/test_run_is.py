from unittest import TestCase

import numpy as np

from condlgm import (
    ProposalParams,
    SamplerConfig,
    SamplerError,
    importance_sample,
    run_is,
)
from tests.resources.oracles import weighted_standard_errors
from tests.resources.toy_targets import (
    FailingToyTarget,
    GaussianToyTarget,
    HalfFailingToyTarget,
)


class TestRunIs(TestCase):
    def test_posterior_moments(self):
        target = GaussianToyTarget()
        cfg = SamplerConfig(method='is', n0=500, n=3000, seed=11)
        result = run_is(target, target.default_proposal(), cfg)
        self.assertEqual(3000, len(result))
        errors = weighted_standard_errors(result.points, result.weights)
        self.assertTrue(np.all(np.abs(result.mean() - target.posterior_mean)
                               < 4 * errors))
        np.testing.assert_allclose(target.posterior_cov, result.cov(),
                                   atol=0.1)

    def test_adapted_proposal(self):
        target = GaussianToyTarget()
        g0 = target.default_proposal()
        cfg = SamplerConfig(method='is', n0=400, n=100, seed=12)
        result = run_is(target, g0, cfg)
        self.assertIs(g0, result.proposals[0])
        g1 = result.proposals[1]
        np.testing.assert_allclose(target.posterior_mean, g1.mu, atol=0.25)
        self.assertEqual([400, 100], result.schedule)
        self.assertEqual(500, result.n_evaluated)
        self.assertTrue(all(sample.iteration == 1 for sample in result))

    def test_main_round_uses_second_substreams(self):
        target = GaussianToyTarget()
        cfg = SamplerConfig(method='is', n0=200, n=50, seed=13)
        result = run_is(target, target.default_proposal(), cfg)
        direct = importance_sample(target, result.proposals[1], 50, 13,
                                   round_index=1)
        np.testing.assert_array_equal(direct.points, result.points)
        np.testing.assert_array_equal(direct.log_weights, result.log_weights)

    def test_failures_counted_over_both_rounds(self):
        target = HalfFailingToyTarget()
        cfg = SamplerConfig(method='is', n0=300, n=300, seed=14)
        with self.assertLogs('condlgm.samplers._importance_sample',
                             level='WARNING'):
            result = run_is(target, target.default_proposal(), cfg)
        main_failures = sum(sample.failed for sample in result)
        self.assertGreater(result.n_failed, main_failures)
        self.assertAlmostEqual(result.n_failed / 600, result.failure_rate)
        for sample, weight in zip(result, result.weights):
            if sample.failed:
                self.assertEqual(0.0, weight)

    def test_unusable_preliminary_sample(self):
        target = FailingToyTarget()
        cfg = SamplerConfig(method='is', n0=20, n=20, seed=15)
        with self.assertRaises(SamplerError):
            run_is(target, target.default_proposal(), cfg)

    def test_workers_do_not_change_the_result(self):
        target = GaussianToyTarget()
        g0 = ProposalParams.student_t([0.0, 0.0], 3.0 * np.eye(2), 5)
        serial = run_is(target, g0, SamplerConfig(method='is', n0=60, n=60,
                                                  seed=16, workers=1))
        parallel = run_is(target, g0, SamplerConfig(method='is', n0=60, n=60,
                                                    seed=16, workers=2))
        np.testing.assert_array_equal(serial.points, parallel.points)
        np.testing.assert_array_equal(serial.log_weights,
                                      parallel.log_weights)

    def test_method(self):
        target = GaussianToyTarget()
        with self.assertRaises(ValueError):
            run_is(target, target.default_proposal(),
                   SamplerConfig(method='amis'))
