import math
from unittest import TestCase

import numpy as np

from condlgm import EmptyPosteriorError, normalize_weights


class TestNormalizeWeights(TestCase):
    def test_sums_to_one(self):
        weights = normalize_weights(np.log([1.0, 2.0, 5.0]))
        np.testing.assert_allclose([0.125, 0.25, 0.625], weights)

    def test_large_log_weights(self):
        weights = normalize_weights([1000.0, 1000.0 + math.log(3.0)])
        np.testing.assert_allclose([0.25, 0.75], weights)
        weights = normalize_weights([-1000.0, -1001.0])
        self.assertAlmostEqual(1.0, np.sum(weights))
        self.assertTrue(np.all(weights > 0))

    def test_minus_infinity_is_zero(self):
        weights = normalize_weights([0.0, -math.inf, 0.0])
        np.testing.assert_array_equal([0.5, 0.0, 0.5], weights)

    def test_no_finite_weight(self):
        with self.assertRaises(EmptyPosteriorError):
            normalize_weights([-math.inf, -math.inf])

    def test_invalid_values(self):
        with self.assertRaises(ValueError):
            normalize_weights([0.0, math.nan])
        with self.assertRaises(ValueError):
            normalize_weights([0.0, math.inf])
