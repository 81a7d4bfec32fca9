"""
PRIVATE MODULE: do not import (from) it directly.

This module contains the exceptions raised by condlgm. Each one also derives
from the builtin exception that describes its nature, so callers may catch
either.
"""
import typing


class CondLgmError(Exception):
    """
    Base class of all condlgm errors.
    """


class InvalidDimensionError(CondLgmError, ValueError):
    """
    Raised when sizes of vectors, matrices or grids do not agree.
    """


class FactorizationError(CondLgmError, ArithmeticError):
    """
    Raised when a Cholesky factorization meets a non-positive pivot.
    """
    def __init__(self, pivot: int, message: typing.Optional[str] = None):
        self.pivot = pivot
        super().__init__(message or 'Non-positive pivot at index {}.'
                         .format(pivot))


class InvalidConstraintError(CondLgmError, ValueError):
    """
    Raised when a linear constraint is rank deficient or too large.
    """


class ConditionalFitError(CondLgmError, ArithmeticError):
    """
    Raised when a conditional model cannot be fitted.
    """


class UnsupportedModelError(CondLgmError, ValueError):
    """
    Raised when an operation is asked for a model it does not support.
    """


class AdaptationError(CondLgmError, ArithmeticError):
    """
    Raised when moment matching has no usable weights.
    """


class EmptyPosteriorError(CondLgmError, ArithmeticError):
    """
    Raised when no sample carries a finite log weight.
    """


class UndefinedDiagnosticError(CondLgmError, ValueError):
    """
    Raised when an effective sample size is requested for zero weights.
    """


class DegenerateSupportError(CondLgmError, ValueError):
    """
    Raised when a kernel density estimate is asked for a delta-like sample.
    """


class MissingMarginalError(CondLgmError, KeyError):
    """
    Raised when a sample has no conditional marginal for a parameter.
    """
    def __str__(self):
        # KeyError would otherwise quote the message.
        return str(self.args[0]) if self.args else ''


class SamplerError(CondLgmError, RuntimeError):
    """
    Raised when a sampler run has to be aborted.
    """


class DataError(CondLgmError, ValueError):
    """
    Raised for unusable datasets and data files.
    """


class ConfigError(CondLgmError, ValueError):
    """
    Raised for invalid run configurations. Every problem names its field.
    """
    def __init__(self, problems: typing.Sequence[typing.Tuple[str, str]]):
        self.problems = list(problems)
        super().__init__('; '.join('{}: {}'.format(field, msg)
                                   for field, msg in self.problems))
