import logging
import typing
from dataclasses import dataclass, field

import numpy as np

from condlgm._exceptions import UndefinedDiagnosticError
from condlgm.diagnostics._ess import ess
from condlgm.diagnostics._mh_ess import mh_ess
from condlgm.diagnostics._ne_h import ne_h
from condlgm.diagnostics._probability_plot import probability_plot
from condlgm.diagnostics._running_ess import running_ess
from condlgm.samplers._weighted_sample import SampleChain, WeightedSampleSet


logger = logging.getLogger(__name__)


@dataclass
class DiagnosticsReport:
    """
    The quality diagnostics of a sampler run.
    """
    ess: float
    running_ess: np.ndarray
    ne_h: typing.Dict[str, typing.Optional[float]]
    pplot: typing.Dict[str, np.ndarray]
    n_failed_fits: int
    runtime_seconds: float
    method: str = 'is'
    n_samples: int = 0
    schedule: typing.List[int] = field(default_factory=list)
    acceptance_rate: typing.Optional[float] = None
    warnings: typing.List[str] = field(default_factory=list)

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        """
        The report as plain json serializable values. The plot data and the
        running ESS are left out; they go to their own files.
        """
        return {
            'method': self.method,
            'n_samples': self.n_samples,
            'ess': self.ess,
            'ne_h': dict(self.ne_h),
            'n_failed_fits': self.n_failed_fits,
            'runtime_seconds': self.runtime_seconds,
            'schedule': list(self.schedule),
            'acceptance_rate': self.acceptance_rate,
            'warnings': list(self.warnings),
        }


def diagnose(sample_set: WeightedSampleSet) -> DiagnosticsReport:
    """
    Compute all diagnostics of a sampler run. For importance sampling runs,
    ``h`` is the identity of each conditioning parameter. For a chain, the
    sizes are corrected for autocorrelation and the running ESS is the
    uniform running size scaled by the final ESS.
    :param sample_set: the result of ``run_is``, ``run_amis`` or ``run_mh``.
    :return: a ``DiagnosticsReport``.
    """
    weights = sample_set.weights
    points = sample_set.points
    pplot = {name: probability_plot(points[:, k], weights)
             for k, name in enumerate(sample_set.names)}

    if isinstance(sample_set, SampleChain):
        per_parameter = {name: mh_ess(points[:, k])
                         for k, name in enumerate(sample_set.names)}
        total = min(per_parameter.values()) if per_parameter else 0.0
        running = np.arange(1, len(weights) + 1) * (total / len(weights))
        acceptance = sample_set.acceptance_rate
    else:
        per_parameter = {}
        for k, name in enumerate(sample_set.names):
            try:
                per_parameter[name] = ne_h(weights, points[:, k])
            except UndefinedDiagnosticError:
                logger.warning('n_e(h) of %s is undefined: h is zero on the '
                               'weighted support.', name)
                per_parameter[name] = None
        total = ess(weights)
        running = running_ess(weights)
        acceptance = None

    return DiagnosticsReport(ess=float(total),
                             running_ess=running,
                             ne_h=per_parameter,
                             pplot=pplot,
                             n_failed_fits=sample_set.n_failed,
                             runtime_seconds=sample_set.runtime_seconds,
                             method=sample_set.method,
                             n_samples=len(sample_set),
                             schedule=list(sample_set.schedule),
                             acceptance_rate=acceptance,
                             warnings=list(sample_set.warnings))
