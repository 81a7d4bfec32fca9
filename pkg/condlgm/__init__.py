from condlgm._meta import __version__
from condlgm._exceptions import (
    CondLgmError,
    InvalidDimensionError,
    FactorizationError,
    InvalidConstraintError,
    ConditionalFitError,
    UnsupportedModelError,
    AdaptationError,
    EmptyPosteriorError,
    UndefinedDiagnosticError,
    DegenerateSupportError,
    MissingMarginalError,
    SamplerError,
    DataError,
    ConfigError,
)
from condlgm._types import (
    ConditioningPoint,
    GAUSSIAN,
    GAUSSIAN_HETEROSCEDASTIC,
    STUDENT_T,
)
from condlgm.gmrf._sparse_precision import (
    SparsePrecision,
    CholeskyFactor,
    LinearConstraint,
)
from condlgm.gmrf._build_rw2_precision import build_rw2_precision
from condlgm.gmrf._cholesky import cholesky
from condlgm.gmrf._gaussian_logdensity import gaussian_logdensity
from condlgm.gmrf._solve_constrained import solve_constrained
from condlgm.fitter._conditional_model import (
    ConditionalModel,
    GammaPrior,
    Rw2Term,
)
from condlgm.fitter._fit_result import (
    FitResult,
    GaussianApprox,
    MarginalGrid,
    SmoothSummary,
    ThetaGrid,
)
from condlgm.fitter._gaussian_approximation import gaussian_approximation
from condlgm.fitter._conditional_log_evidence import conditional_log_evidence
from condlgm.fitter._exact_gaussian_evidence import exact_gaussian_evidence
from condlgm.fitter._latent_marginals import latent_marginals
from condlgm.fitter._build_theta_grid import build_theta_grid
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._weighted_sample import (
    SampleChain,
    WeightedSample,
    WeightedSampleSet,
)
from condlgm.samplers._sampler_config import SamplerConfig
from condlgm.samplers._target_adapter import TargetAdapter
from condlgm.samplers._substream import substream
from condlgm.samplers._sample_proposal import sample_proposal
from condlgm.samplers._log_proposal_density import log_proposal_density
from condlgm.samplers._adapt_moments import adapt_moments
from condlgm.samplers._normalize_weights import normalize_weights
from condlgm.samplers._importance_sample import importance_sample
from condlgm.samplers._run_is import run_is
from condlgm.samplers._run_amis import mixture_log_weights, run_amis
from condlgm.samplers._run_mh import run_mh
from condlgm.samplers._estimate_log_evidence import estimate_log_evidence
from condlgm.diagnostics._ess import ess
from condlgm.diagnostics._ne_h import ne_h
from condlgm.diagnostics._probability_plot import (
    probability_plot,
    weighted_ecdf,
)
from condlgm.diagnostics._running_ess import running_ess
from condlgm.diagnostics._mh_ess import mh_ess
from condlgm.diagnostics._diagnostics_report import DiagnosticsReport, diagnose
from condlgm.marginals._mix_marginals import MixedMarginal, mix_marginals
from condlgm.marginals._weighted_kde import (
    WeightedKdeEstimate,
    weighted_kde_1d,
    weighted_kde_2d,
)
from condlgm.marginals._quantile_curve import quantile_curve
from condlgm.models._dataset import Dataset
from condlgm.models._model_spec import MODEL_SPECS, ModelSpec, model_spec
from condlgm.models._bivariate_linear_adapter import bivariate_linear_adapter
from condlgm.models._lasso_adapter import lasso_adapter
from condlgm.models._missing_covariate_adapter import (
    missing_covariate_adapter
)
from condlgm.models._quantile_rw2_adapter import quantile_rw2_adapter
from condlgm.models._simulate_dataset import simulate_dataset
from condlgm.models._quantile_curves import quantile_curves
from condlgm.cli._run_config import RunConfig, parse_config
from condlgm.cli._ingest_csv import ingest_csv
from condlgm.cli._run import run
