import csv
import itertools
import json
import logging
import math
import os
import typing

import numpy as np

from condlgm._exceptions import (
    CondLgmError,
    ConfigError,
    DataError,
    DegenerateSupportError,
    EmptyPosteriorError,
    MissingMarginalError,
    SamplerError,
)
from condlgm.cli._ingest_csv import ingest_csv
from condlgm.cli._run_config import RunConfig
from condlgm.diagnostics._diagnostics_report import DiagnosticsReport, diagnose
from condlgm.marginals._mix_marginals import mix_marginals
from condlgm.marginals._weighted_kde import weighted_kde_1d, weighted_kde_2d
from condlgm.models._dataset import format_float
from condlgm.models._model_spec import model_spec
from condlgm.models._quantile_curves import quantile_curves
from condlgm.models._simulate_dataset import simulate_dataset
from condlgm.samplers._estimate_log_evidence import estimate_log_evidence
from condlgm.samplers._run_amis import run_amis
from condlgm.samplers._run_is import run_is
from condlgm.samplers._run_mh import run_mh
from condlgm.samplers._target_adapter import TargetAdapter
from condlgm.samplers._weighted_sample import WeightedSampleSet


EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_SAMPLER = 4
EXIT_IO = 5

FIT_STORM_RATE = 0.5
SAMPLES_FILE = 'samples.csv'
DIAGNOSTICS_FILE = 'diagnostics.json'
ERROR_FILE = 'error.json'

logger = logging.getLogger(__name__)


class FitStormError(SamplerError):
    """
    Raised after a run in which most conditional fits failed.
    """


def exit_code(error: BaseException) -> int:
    """
    The process exit code that belongs to ``error``.
    """
    if isinstance(error, ConfigError):
        return EXIT_CONFIG
    if isinstance(error, DataError):
        return EXIT_DATA
    if isinstance(error, OSError):
        return EXIT_IO
    return EXIT_SAMPLER


def run(config: RunConfig) -> int:
    """
    Run a full analysis: load (or simulate) the data, sample the
    conditioning parameters, assemble the posterior marginals and write all
    output files to ``config.out``. ``diagnostics.json`` is written even when
    the run fails; a failure also writes ``error.json``.
    :param config: the run configuration.
    :return: the exit status.
    """
    try:
        os.makedirs(config.out, exist_ok=True)
        config.write_resolved(config.out)
    except OSError as err:
        logger.error('Cannot prepare the output directory %s: %s',
                     config.out, err)
        return EXIT_IO

    report = None
    sample_set = None
    error = None
    try:
        target = _target(config)
        sample_set = _sample(config, target)
        report = diagnose(sample_set)
        _write_outputs(config, target, sample_set, report)
        if sample_set.failure_rate > FIT_STORM_RATE:
            raise FitStormError('{} of {} conditional fits failed.'
                                .format(sample_set.n_failed,
                                        sample_set.n_evaluated))
    except (CondLgmError, OSError) as err:
        error = err
        logger.error('%s: %s', type(err).__name__, err)

    status = EXIT_OK if error is None else exit_code(error)
    try:
        _write_diagnostics(config, report, sample_set, error, status)
        if error is not None:
            _write_json(os.path.join(config.out, ERROR_FILE), {
                'error': type(error).__name__,
                'message': str(error),
                'exit_code': status,
            })
    except OSError as err:
        logger.error('Cannot write the diagnostics: %s', err)
        return EXIT_IO
    return status


def _target(config: RunConfig) -> TargetAdapter:
    spec = model_spec(config.model)
    if config.data is None:
        logger.info('No data given; simulating the %s dataset with seed %d.',
                    config.model, config.seed)
        data = simulate_dataset(config.model, config.seed)
    else:
        data = ingest_csv(config.data, spec.columns)
    target = spec.build(data, lam=config.lam, n_bins=config.bins)
    target.n_theta_nodes = config.theta_nodes
    return target


def _sample(config: RunConfig, target: TargetAdapter) -> WeightedSampleSet:
    cfg = config.sampler_config(target.dim)
    if config.method == 'mh':
        return run_mh(target, cfg)
    g0 = config.proposal(target.default_proposal())
    sampler = run_is if config.method == 'is' else run_amis
    return sampler(target, g0, cfg)


def _write_outputs(config: RunConfig, target: TargetAdapter,
                   sample_set: WeightedSampleSet,
                   report: DiagnosticsReport) -> None:
    out = config.out
    weights = sample_set.weights
    points = sample_set.points
    names = list(sample_set.names)

    _write_csv(os.path.join(out, SAMPLES_FILE),
               ['iteration', 'index'] + names
               + ['log_evidence', 'log_prior', 'weight'],
               ([s.iteration, s.index] + list(s.z)
                + [s.log_evidence, s.log_prior, w]
                for s, w in zip(sample_set, weights)))

    marginals_dir = os.path.join(out, 'marginals')
    os.makedirs(marginals_dir, exist_ok=True)
    for param in _latent_names(sample_set, weights):
        try:
            mixed = mix_marginals(sample_set, param)
        except MissingMarginalError as err:
            logger.warning('Skipping the marginal of %s: %s', param, err)
            continue
        _write_csv(os.path.join(marginals_dir, '{}.csv'.format(param)),
                   ['abscissa', 'density'],
                   zip(mixed.abscissae, mixed.densities))
    for k, param in enumerate(names):
        try:
            kde = weighted_kde_1d(points[:, k], weights)
        except DegenerateSupportError as err:
            logger.warning('Skipping the marginal of %s: %s', param, err)
            continue
        _write_csv(os.path.join(marginals_dir, '{}.csv'.format(param)),
                   ['abscissa', 'density'],
                   zip(kde.abscissae, kde.densities))

    if config.emit_joint_kde:
        for (a, first), (b, second) in itertools.combinations(
                enumerate(names), 2):
            try:
                kde = weighted_kde_2d(points[:, [a, b]], weights)
            except DegenerateSupportError as err:
                logger.warning('Skipping the joint of %s and %s: %s', first,
                               second, err)
                continue
            _write_csv(os.path.join(out, 'joint_{}_{}.csv'.format(first,
                                                                 second)),
                       [first, second, 'density'],
                       ((x, y, kde.densities[i, j])
                        for i, x in enumerate(kde.abscissae)
                        for j, y in enumerate(kde.ordinates)))

    if config.emit_pplot:
        for param, pairs in report.pplot.items():
            _write_csv(os.path.join(out, 'pplot_{}.csv'.format(param)),
                       ['empirical_cdf', 'theoretical_cdf'], pairs)

    if config.emit_running_ess:
        _write_csv(os.path.join(out, 'running_ess.csv'),
                   ['sample', 'running_ess'],
                   enumerate(report.running_ess, start=1))

    if config.model == 'quantile' and config.emit_quantile_curves:
        locations, curves = quantile_curves(sample_set, config.quantile_probs,
                                            config.quantile_literal_sqrt)
        probabilities = list(curves)
        _write_csv(os.path.join(out, 'quantiles.csv'),
                   ['x'] + ['p_{}'.format(format_float(p))
                            for p in probabilities],
                   ([x] + [curves[p][i] for p in probabilities]
                    for i, x in enumerate(locations)))


def _latent_names(sample_set: WeightedSampleSet,
                  weights: np.ndarray) -> typing.List[str]:
    # Parameters present in the fit of every sample that carries weight.
    names = None
    for sample, weight in zip(sample_set, weights):
        if weight <= 0 or sample.fit is None:
            continue
        keys = list(sample.fit.marginals)
        names = keys if names is None else [k for k in names if k in keys]
    return names or []


def _write_diagnostics(config: RunConfig,
                       report: typing.Optional[DiagnosticsReport],
                       sample_set: typing.Optional[WeightedSampleSet],
                       error: typing.Optional[BaseException],
                       status: int) -> None:
    content = report.to_dict() if report is not None else {}
    content.update({
        'model': config.model,
        'status': 'ok' if error is None else 'failed',
        'exit_code': status,
        'error': None if error is None else str(error),
    })
    if sample_set is not None:
        content['n_evaluated'] = sample_set.n_evaluated
        content['n_failed_fits'] = sample_set.n_failed
        content['failure_rate'] = sample_set.failure_rate
        if sample_set.proposals:
            content['final_proposal'] = sample_set.proposals[-1].to_dict()
        if sample_set.method != 'mh':
            try:
                content['log_evidence_estimate'] = estimate_log_evidence(
                    sample_set)
            except EmptyPosteriorError:
                content['log_evidence_estimate'] = None
    _write_json(os.path.join(config.out, DIAGNOSTICS_FILE), content)


def _write_json(path: str, content: typing.Dict[str, typing.Any]) -> None:
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(_plain(content), f, indent=2, sort_keys=True)
        f.write('\n')


def _plain(value: typing.Any) -> typing.Any:
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    return value


def _write_csv(path: str, header: typing.Sequence[str],
               rows: typing.Iterable[typing.Iterable[typing.Any]]) -> None:
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])


def _cell(value: typing.Any) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format_float(float(value))

