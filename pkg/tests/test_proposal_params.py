from unittest import TestCase

import numpy as np

from condlgm import InvalidDimensionError, ProposalParams


class TestProposalParams(TestCase):
    def test_gaussian(self):
        p = ProposalParams.gaussian([1.0, 2.0], [[2.0, 0.5], [0.5, 1.0]])
        self.assertEqual('gaussian', p.family)
        self.assertEqual(2, p.dim)
        self.assertIsNone(p.nu)
        np.testing.assert_allclose(p.cholesky @ p.cholesky.T, p.sigma)
        np.testing.assert_array_equal(p.sigma, p.covariance)

    def test_student_t_covariance(self):
        p = ProposalParams.student_t([0.0], [[2.0]], 4)
        self.assertEqual(4.0, p.nu)
        np.testing.assert_allclose([[4.0]], p.covariance)
        with self.assertRaises(ValueError):
            ProposalParams.student_t([0.0], [[1.0]], 2).covariance

    def test_scalar_inputs(self):
        p = ProposalParams.gaussian(0.5, 3.0)
        self.assertEqual((1,), p.mu.shape)
        self.assertEqual((1, 1), p.sigma.shape)

    def test_with_moments_keeps_family(self):
        p = ProposalParams.student_t([0.0, 0.0], np.eye(2), 5)
        q = p.with_moments([1.0, 1.0], 2.0 * np.eye(2))
        self.assertEqual('student_t', q.family)
        self.assertEqual(5.0, q.nu)
        np.testing.assert_array_equal([1.0, 1.0], q.mu)

    def test_to_dict(self):
        p = ProposalParams.gaussian([1.0], [[4.0]])
        self.assertDictEqual({'family': 'gaussian', 'nu': None, 'mu': [1.0],
                              'sigma': [[4.0]]}, p.to_dict())

    def test_invalid(self):
        with self.assertRaises(ValueError):
            ProposalParams('cauchy', [0.0], [[1.0]])
        with self.assertRaises(InvalidDimensionError):
            ProposalParams.gaussian([0.0, 0.0], np.eye(3))
        with self.assertRaises(ValueError):
            ProposalParams.gaussian([0.0, 0.0], [[1.0, 0.5], [0.4, 1.0]])
        with self.assertRaises(ValueError):
            ProposalParams.gaussian([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]])
        with self.assertRaises(ValueError):
            ProposalParams.student_t([0.0], [[1.0]], 0.0)
        with self.assertRaises(ValueError):
            ProposalParams('gaussian', [0.0], [[1.0]], 3.0)
