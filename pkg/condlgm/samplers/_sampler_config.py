import typing
from dataclasses import dataclass

import numpy as np

from condlgm._exceptions import ConfigError


METHODS = ('is', 'amis', 'mh')

# 16 rounds of 250 and 12 rounds of 500: 28 rounds, 10000 samples.
DEFAULT_SCHEDULE = (250,) * 16 + (500,) * 12


@dataclass(frozen=True, eq=False)
class SamplerConfig:
    """
    The settings of a sampler run. ``n0`` is the size of the preliminary
    importance sample, ``n`` the size of the main importance sample or the
    length of the chain and ``schedule`` the round sizes of adaptive
    sampling.
    """
    method: str = 'is'
    n0: int = 800
    n: int = 10000
    schedule: typing.Tuple[int, ...] = DEFAULT_SCHEDULE
    seed: int = 0
    workers: int = 1
    mh_step_sigma: typing.Optional[np.ndarray] = None
    burn_in: typing.Optional[int] = None
    adapt: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'schedule',
                           tuple(int(n_t) for n_t in self.schedule))
        if self.mh_step_sigma is not None:
            object.__setattr__(self, 'mh_step_sigma',
                               np.atleast_2d(np.asarray(self.mh_step_sigma,
                                                        dtype=float)))
        problems = []
        if self.method not in METHODS:
            problems.append(('method', 'expected one of {}, got {}'
                             .format(METHODS, self.method)))
        for name in ('n0', 'n', 'workers'):
            if getattr(self, name) < 1:
                problems.append((name, 'must be at least 1, got {}'
                                 .format(getattr(self, name))))
        if not self.schedule:
            problems.append(('schedule', 'must not be empty'))
        elif min(self.schedule) < 1:
            problems.append(('schedule', 'every round needs at least 1 '
                                         'sample'))
        if not 0 <= self.seed < 2 ** 64:
            problems.append(('seed', 'must be a 64 bit nonnegative integer, '
                                     'got {}'.format(self.seed)))
        if self.burn_in is not None and self.burn_in < 0:
            problems.append(('burn_in', 'must be nonnegative, got {}'
                             .format(self.burn_in)))
        if problems:
            raise ConfigError(problems)

    @property
    def mh_burn_in(self) -> int:
        """
        The number of discarded chain states: ``burn_in`` or ``n // 10``.
        """
        return self.n // 10 if self.burn_in is None else self.burn_in
