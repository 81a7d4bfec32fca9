import math
import typing

import numpy as np

from condlgm._exceptions import InvalidConstraintError, InvalidDimensionError
from condlgm._types import ArrayLike
from condlgm.gmrf._cholesky import cholesky
from condlgm.gmrf._solve_constrained import check_constraint, kriging_terms
from condlgm.gmrf._sparse_precision import (
    CholeskyFactor,
    LinearConstraint,
    SparsePrecision,
)


_LOG_2PI = math.log(2.0 * math.pi)


def gaussian_logdensity(
        q: SparsePrecision,
        mean: ArrayLike,
        x: ArrayLike,
        constraint: typing.Optional[LinearConstraint] = None,
        rank_deficiency: int = 0,
        factor: typing.Optional[CholeskyFactor] = None) -> float:
    """
    Evaluate the log density of ``N(mean, (Q + jitter * I)^-1)`` at ``x``.

    With a ``constraint``, the density of ``x`` conditioned on ``A x = e``
    is returned: ``log p(x) - log p(A x = e) - 0.5 log|A A^T|``.

    With ``rank_deficiency = k``, ``Q`` is treated as an intrinsic precision:
    the jitter is ignored and the generalized determinant over the nonzero
    eigenvalues is used, with ``(d - k) / 2 log(2 pi)`` as normalization.
    :param q: the precision.
    :param mean: the mean vector.
    :param x: the point of evaluation.
    :param constraint: an optional linear constraint.
    :param rank_deficiency: the dimension of the null space of ``Q``.
    :param factor: a factor of ``q`` to reuse, if already computed.
    :return: the log density.
    """
    mean = np.asarray(mean, dtype=float)
    x = np.asarray(x, dtype=float)
    if mean.shape != (q.dim,) or x.shape != (q.dim,):
        raise InvalidDimensionError('Expected vectors of length {}, got {} and '
                                    '{}.'.format(q.dim, mean.shape, x.shape))
    residual = x - mean

    if rank_deficiency:
        if constraint is not None:
            raise InvalidConstraintError('Use either a constraint or a rank '
                                         'deficiency, not both.')
        eigenvalues = np.linalg.eigvalsh(q.to_dense())
        rank = q.dim - rank_deficiency
        log_det = float(np.sum(np.log(eigenvalues[rank_deficiency:])))
        return (-0.5 * rank * _LOG_2PI + 0.5 * log_det
                - 0.5 * q.quadratic_form(residual))

    factor = factor or cholesky(q)
    result = (-0.5 * q.dim * _LOG_2PI + 0.5 * factor.log_det
              - 0.5 * q.quadratic_form(residual, jittered=True))
    if constraint is None or constraint.n_constraints == 0:
        return result

    check_constraint(factor, constraint)
    _, w = kriging_terms(factor, constraint)
    k = constraint.n_constraints
    offset = constraint.rhs - constraint.matrix @ mean
    w_chol = np.linalg.cholesky(w)
    z = np.linalg.solve(w_chol, offset)
    log_p_constraint = (-0.5 * k * _LOG_2PI
                        - float(np.sum(np.log(np.diag(w_chol))))
                        - 0.5 * float(z @ z))
    _, log_det_aat = np.linalg.slogdet(constraint.matrix @ constraint.matrix.T)
    return result - log_p_constraint - 0.5 * log_det_aat
