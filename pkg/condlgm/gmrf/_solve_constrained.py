import typing

import numpy as np

from condlgm._exceptions import InvalidConstraintError, InvalidDimensionError
from condlgm._types import ArrayLike, Vector
from condlgm.gmrf._sparse_precision import CholeskyFactor, LinearConstraint


def check_constraint(factor: CholeskyFactor,
                     constraint: LinearConstraint) -> None:
    """
    Raise an ``InvalidConstraintError`` if ``constraint`` cannot be applied
    to a field factorized by ``factor``.
    """
    if constraint.dim != factor.dim:
        raise InvalidDimensionError('Constraint has {} columns, the field has '
                                    'dimension {}.'.format(constraint.dim,
                                                           factor.dim))
    k = constraint.n_constraints
    if k >= factor.dim:
        raise InvalidConstraintError('{} constraints leave no freedom in '
                                     'dimension {}.'.format(k, factor.dim))
    if k and np.linalg.matrix_rank(constraint.matrix) < k:
        raise InvalidConstraintError('The constraint matrix does not have full '
                                     'row rank.')


def kriging_terms(
        factor: CholeskyFactor,
        constraint: LinearConstraint) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Return ``V = Q^-1 A^T`` and ``W = A V`` for conditioning by kriging.
    """
    v = factor.solve(constraint.matrix.T)
    w = constraint.matrix @ v
    return v, 0.5 * (w + w.T)


def solve_constrained(
        factor: CholeskyFactor,
        b: ArrayLike,
        constraint: typing.Optional[LinearConstraint] = None) -> Vector:
    """
    Solve ``Q x = b`` and correct the solution so that ``A x = e`` holds
    (conditioning by kriging). The sparse factor itself is left intact.
    :param factor: the Cholesky factor of ``Q``.
    :param b: the right hand side.
    :param constraint: the constraint; ``None`` or an empty constraint gives
    the plain solve.
    :return: the constrained solution ``x``.
    """
    x = factor.solve(b)
    if constraint is None or constraint.n_constraints == 0:
        return x
    check_constraint(factor, constraint)
    v, w = kriging_terms(factor, constraint)
    # A second correction removes the rounding left by the first one.
    for _ in range(2):
        x = x - v @ np.linalg.solve(w, constraint.residual(x))
    return x
