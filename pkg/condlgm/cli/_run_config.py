import os
import typing
from dataclasses import dataclass, fields

import numpy as np

from condlgm._exceptions import ConfigError
from condlgm._types import GAUSSIAN, STUDENT_T
from condlgm.fitter._build_theta_grid import DEFAULT_THETA_NODES
from condlgm.models._model_spec import MODEL_SPECS
from condlgm.models._quantile_rw2_adapter import DEFAULT_BINS
from condlgm.samplers._proposal_params import ProposalParams
from condlgm.samplers._sampler_config import (
    DEFAULT_SCHEDULE,
    METHODS,
    SamplerConfig,
)


RESOLVED_FILE = 'config.resolved'
DEFAULT_QUANTILE_PROBS = (0.025, 0.25, 0.5, 0.75, 0.975)

# The number of conditioning parameters where it does not depend on data.
STATIC_DIMS = {'bivariate': 2, 'quantile': 2}


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError('expected a boolean, got {!r}'.format(text))


def _parse_floats(text: str) -> typing.Tuple[float, ...]:
    return tuple(float(part) for part in text.split(',') if part.strip())


def _parse_schedule(text: str) -> typing.Tuple[int, ...]:
    """
    Parse ``250x16,500x12`` or ``250,250,500``.
    """
    result = []
    for part in text.split(','):
        part = part.strip().lower()
        if not part:
            continue
        if 'x' in part:
            size, repeat = part.split('x', 1)
            result.extend([int(size)] * int(repeat))
        else:
            result.append(int(part))
    return tuple(result)


def _parse_matrix(text: str) -> typing.Tuple[typing.Tuple[float, ...], ...]:
    """
    Parse a diagonal ``a,b,c`` (one row) or full ``a,b;c,d`` matrix.
    """
    return tuple(_parse_floats(row) for row in text.split(';') if row.strip())


def _format(value: typing.Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return '{:.17g}'.format(value)
    if isinstance(value, tuple) and value and isinstance(value[0], tuple):
        return ';'.join(_format(row) for row in value)
    if isinstance(value, tuple):
        return ','.join(_format(item) for item in value)
    return str(value)


# Config key -> (RunConfig field, parser).
KEYS = {
    'model': ('model', str),
    'data': ('data', str),
    'method': ('method', str),
    'seed': ('seed', int),
    'workers': ('workers', int),
    'out': ('out', str),
    'lambda': ('lam', float),
    'sampler.N0': ('n0', int),
    'sampler.N': ('n', int),
    'sampler.schedule': ('schedule', _parse_schedule),
    'sampler.burn_in': ('burn_in', int),
    'sampler.mh_step_sd': ('mh_step_sd', _parse_floats),
    'sampler.adapt': ('adapt', _parse_bool),
    'proposal.family': ('proposal_family', str),
    'proposal.nu': ('proposal_nu', float),
    'proposal.mu0': ('proposal_mu0', _parse_floats),
    'proposal.sigma0': ('proposal_sigma0', _parse_matrix),
    'fitter.theta_nodes': ('theta_nodes', int),
    'fitter.bins': ('bins', int),
    'emit.joint_kde': ('emit_joint_kde', _parse_bool),
    'emit.pplot': ('emit_pplot', _parse_bool),
    'emit.running_ess': ('emit_running_ess', _parse_bool),
    'emit.quantile_curves': ('emit_quantile_curves', _parse_bool),
    'emit.quantile_probs': ('quantile_probs', _parse_floats),
    'emit.quantile_literal_sqrt': ('quantile_literal_sqrt', _parse_bool),
}
REQUIRED = ('model', 'method', 'seed')


@dataclass(frozen=True)
class RunConfig:
    """
    A fully resolved, validated run configuration. A missing ``data`` path
    makes the run use the synthetic dataset of the model.
    """
    model: str
    method: str
    seed: int
    data: typing.Optional[str] = None
    workers: int = os.cpu_count() or 1
    out: str = 'out'
    lam: float = 1.0
    n0: int = 800
    n: int = 10000
    schedule: typing.Tuple[int, ...] = DEFAULT_SCHEDULE
    burn_in: typing.Optional[int] = None
    mh_step_sd: typing.Optional[typing.Tuple[float, ...]] = None
    adapt: bool = True
    proposal_family: typing.Optional[str] = None
    proposal_nu: typing.Optional[float] = None
    proposal_mu0: typing.Optional[typing.Tuple[float, ...]] = None
    proposal_sigma0: typing.Optional[
        typing.Tuple[typing.Tuple[float, ...], ...]] = None
    theta_nodes: int = DEFAULT_THETA_NODES
    bins: int = DEFAULT_BINS
    emit_joint_kde: bool = True
    emit_pplot: bool = True
    emit_running_ess: bool = True
    emit_quantile_curves: bool = True
    quantile_probs: typing.Tuple[float, ...] = DEFAULT_QUANTILE_PROBS
    quantile_literal_sqrt: bool = False

    def __post_init__(self):
        problems = _validate(self)
        if problems:
            raise ConfigError(problems)

    def resolved_text(self) -> str:
        """
        The configuration as ``key = value`` lines, one per key that has a
        value, in a fixed order. ``parse_config`` reads it back.
        """
        lines = []
        for key, (name, _) in KEYS.items():
            value = getattr(self, name)
            if value is not None:
                lines.append('{} = {}'.format(key, _format(value)))
        return '\n'.join(lines) + '\n'

    def write_resolved(self, directory: str) -> str:
        path = os.path.join(directory, RESOLVED_FILE)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(self.resolved_text())
        return path

    def sampler_config(self, dim: int) -> SamplerConfig:
        """
        The ``SamplerConfig`` of this run for ``dim`` conditioning
        parameters.
        """
        step = None
        if self.mh_step_sd is not None:
            if len(self.mh_step_sd) != dim:
                raise ConfigError([('sampler.mh_step_sd',
                                    'expected {} values, got {}'
                                    .format(dim, len(self.mh_step_sd)))])
            step = np.diag(np.square(self.mh_step_sd))
        return SamplerConfig(method=self.method, n0=self.n0, n=self.n,
                             schedule=self.schedule, seed=self.seed,
                             workers=self.workers, mh_step_sigma=step,
                             burn_in=self.burn_in, adapt=self.adapt)

    def proposal(self, default: ProposalParams) -> ProposalParams:
        """
        The initial proposal: the model's ``default`` with the configured
        overrides applied.
        """
        dim = default.dim
        problems = []
        mu = default.mu
        if self.proposal_mu0 is not None:
            if len(self.proposal_mu0) != dim:
                problems.append(('proposal.mu0', 'expected {} values, got {}'
                                 .format(dim, len(self.proposal_mu0))))
            else:
                mu = np.array(self.proposal_mu0)
        sigma = default.sigma
        if self.proposal_sigma0 is not None:
            sigma, problem = _sigma_matrix(self.proposal_sigma0, dim)
            if problem:
                problems.append(('proposal.sigma0', problem))
                sigma = default.sigma
        family = self.proposal_family or default.family
        nu = None
        if family == STUDENT_T:
            nu = self.proposal_nu or default.nu or 3.0
        if problems:
            raise ConfigError(problems)
        try:
            return ProposalParams(family, mu, sigma, nu)
        except ValueError as err:
            raise ConfigError([('proposal.sigma0', str(err))]) from err


def _sigma_matrix(rows, dim: int):
    if len(rows) == 1:
        if len(rows[0]) != dim:
            return None, 'expected a diagonal of {} values, got {}'.format(
                dim, len(rows[0]))
        return np.diag(rows[0]), None
    matrix = np.array(rows, dtype=float) if len({len(r) for r in rows}) == 1 \
        else None
    if matrix is None or matrix.shape != (dim, dim):
        return None, 'expected a {}x{} matrix'.format(dim, dim)
    return matrix, None


def _validate(config: RunConfig) -> typing.List[typing.Tuple[str, str]]:
    problems = []
    if config.model not in MODEL_SPECS:
        problems.append(('model', 'expected one of {}, got {}'
                         .format(sorted(MODEL_SPECS), config.model)))
    if config.method not in METHODS:
        problems.append(('method', 'expected one of {}, got {}'
                         .format(METHODS, config.method)))
    if not 0 <= config.seed < 2 ** 64:
        problems.append(('seed', 'must be a nonnegative 64 bit integer'))
    for key, name in (('workers', 'workers'), ('sampler.N0', 'n0'),
                      ('sampler.N', 'n')):
        if getattr(config, name) < 1:
            problems.append((key, 'must be at least 1'))
    if not config.schedule or min(config.schedule) < 1:
        problems.append(('sampler.schedule', 'needs at least one round with '
                                             'at least 1 sample each'))
    if config.burn_in is not None and config.burn_in < 0:
        problems.append(('sampler.burn_in', 'must be nonnegative'))
    if config.mh_step_sd is not None and min(config.mh_step_sd,
                                             default=0.0) <= 0:
        problems.append(('sampler.mh_step_sd', 'must be positive'))
    if not config.lam > 0:
        problems.append(('lambda', 'must be positive'))
    if config.proposal_family not in (None, GAUSSIAN, STUDENT_T):
        problems.append(('proposal.family', 'expected {} or {}'
                         .format(GAUSSIAN, STUDENT_T)))
    if config.proposal_nu is not None and not config.proposal_nu > 0:
        problems.append(('proposal.nu', 'must be positive'))
    if config.theta_nodes < 1 or config.theta_nodes % 2 == 0:
        problems.append(('fitter.theta_nodes', 'must be odd and positive'))
    if config.bins < 3:
        problems.append(('fitter.bins', 'must be at least 3'))
    if any(not 0 < p < 1 for p in config.quantile_probs):
        problems.append(('emit.quantile_probs', 'every probability must lie '
                                                'in (0, 1)'))

    dim = STATIC_DIMS.get(config.model)
    if config.proposal_mu0 is not None:
        dim = dim or len(config.proposal_mu0)
        if len(config.proposal_mu0) != dim:
            problems.append(('proposal.mu0', 'expected {} values, got {}'
                             .format(dim, len(config.proposal_mu0))))
    if config.proposal_sigma0 is not None and dim is not None:
        _, problem = _sigma_matrix(config.proposal_sigma0, dim)
        if problem:
            problems.append(('proposal.sigma0', problem))
    if config.mh_step_sd is not None and dim is not None \
            and len(config.mh_step_sd) != dim:
        problems.append(('sampler.mh_step_sd', 'expected {} values, got {}'
                         .format(dim, len(config.mh_step_sd))))
    return problems


def parse_config(
        path: typing.Optional[str] = None,
        overrides: typing.Optional[typing.Dict[str, typing.Any]] = None
) -> RunConfig:
    """
    Read a ``key = value`` configuration file and apply ``overrides`` (such
    as command line flags) on top of it. Lines starting with ``#`` are
    comments. All problems are collected and raised together, each naming
    its key.
    :param path: the configuration file, if any.
    :param overrides: values by config key; ``None`` values are skipped.
    :return: a validated ``RunConfig``.
    """
    raw = {}
    problems = []
    if path is not None:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                lines = f.read().splitlines()
        except OSError as err:
            raise ConfigError([('config', 'cannot read {}: {}'
                                .format(path, err))]) from err
        for number, line in enumerate(lines, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                problems.append(('line {}'.format(number),
                                 'expected key = value'))
                continue
            key, value = (part.strip() for part in line.split('=', 1))
            if key in raw:
                problems.append((key, 'given more than once'))
            raw[key] = value
    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key] = value

    values = {}
    for key, value in raw.items():
        if key not in KEYS:
            problems.append((key, 'unknown key'))
            continue
        name, parser = KEYS[key]
        if not isinstance(value, str):
            values[name] = value
            continue
        try:
            values[name] = parser(value)
        except ValueError as err:
            problems.append((key, 'cannot parse {!r}: {}'.format(value, err)))
    for key in REQUIRED:
        if key not in raw:
            problems.append((key, 'required'))
    if problems:
        raise ConfigError(problems)

    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{name: value for name, value in values.items()
                        if name in known})
