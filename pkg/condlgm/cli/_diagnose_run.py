import json
import math
import os
import typing

import numpy as np

from condlgm._exceptions import DataError
from condlgm.cli._ingest_csv import ingest_csv
from condlgm.cli._run import DIAGNOSTICS_FILE, SAMPLES_FILE
from condlgm.diagnostics._diagnostics_report import DiagnosticsReport, diagnose
from condlgm.samplers._weighted_sample import (
    SampleChain,
    WeightedSample,
    WeightedSampleSet,
)


SAMPLE_COLUMNS = ('iteration', 'index', 'log_evidence', 'log_prior', 'weight')


def diagnose_run(directory: str) -> DiagnosticsReport:
    """
    Recompute the diagnostics of a finished run from its ``samples.csv``.
    The method is taken from the run's ``diagnostics.json`` when present.
    :param directory: the output directory of the run.
    :return: a ``DiagnosticsReport``.
    """
    data = ingest_csv(os.path.join(directory, SAMPLES_FILE), SAMPLE_COLUMNS)
    names = tuple(name for name in data.names if name not in SAMPLE_COLUMNS)
    if not names:
        raise DataError('{} has no parameter columns.'.format(SAMPLES_FILE))
    method = _previous(directory).get('method', 'is')

    weights = data['weight']
    with np.errstate(divide='ignore'):
        log_weights = np.log(weights)
    points = np.column_stack([data[name] for name in names])
    samples = [WeightedSample(z=points[k], iteration=int(data['iteration'][k]),
                              index=int(data['index'][k]),
                              log_evidence=float(data['log_evidence'][k]),
                              log_prior=float(data['log_prior'][k]),
                              log_weight=float(log_weights[k]))
               for k in range(data.n_rows)]
    kind = SampleChain if method == 'mh' else WeightedSampleSet
    sample_set = kind(samples=samples, names=names, method=method)
    sample_set.n_failed = sum(not math.isfinite(s.log_evidence)
                              and math.isfinite(s.log_prior)
                              for s in samples)
    return diagnose(sample_set)


def _previous(directory: str) -> typing.Dict[str, typing.Any]:
    path = os.path.join(directory, DIAGNOSTICS_FILE)
    if not os.path.exists(path):
        return {}
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)
