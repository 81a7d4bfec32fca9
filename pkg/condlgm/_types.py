"""
PRIVATE MODULE: do not import (from) it directly.

This module contains type aliases that are shared between the subpackages.
"""
import typing

import numpy as np
from numpy.typing import ArrayLike, NDArray


Vector = NDArray[np.float64]
Matrix = NDArray[np.float64]
ConditioningPoint = NDArray[np.float64]
ParamNames = typing.Tuple[str, ...]
LogDensity = typing.Callable[[ConditioningPoint], float]

# Family names accepted by the fitter and the proposals.
GAUSSIAN = 'gaussian'
GAUSSIAN_HETEROSCEDASTIC = 'gaussian-heteroscedastic'
STUDENT_T = 'student_t'

__all__ = [
    'ArrayLike',
    'Vector',
    'Matrix',
    'ConditioningPoint',
    'ParamNames',
    'LogDensity',
    'GAUSSIAN',
    'GAUSSIAN_HETEROSCEDASTIC',
    'STUDENT_T',
]
