from unittest import TestCase

from condlgm import (
    MODEL_SPECS,
    DataError,
    Dataset,
    model_spec,
    simulate_dataset,
)


class TestModelSpec(TestCase):
    def test_shipped_models(self):
        self.assertSetEqual({'bivariate', 'lasso', 'missing', 'quantile'},
                            set(MODEL_SPECS))
        for model_id, spec in MODEL_SPECS.items():
            self.assertEqual(model_id, spec.model_id)
            target = spec.build(simulate_dataset(model_id, 71))
            self.assertGreater(target.dim, 0)

    def test_options(self):
        data = simulate_dataset('lasso', 72)
        target = model_spec('lasso').build(data, lam=3.0, n_bins=10)
        self.assertEqual(3.0, target.lam)
        target = model_spec('lasso').build(data, lam=None)
        self.assertEqual(1.0, target.lam)
        target = model_spec('quantile').build(simulate_dataset('quantile', 72),
                                              n_bins=12, lam=3.0)
        self.assertEqual(12, target.n_bins)

    def test_missing_columns(self):
        with self.assertRaises(DataError):
            model_spec('bivariate').build(Dataset({'y': [1.0], 'x1': [1.0]}))

    def test_unknown_model(self):
        with self.assertRaises(DataError):
            model_spec('probit')
