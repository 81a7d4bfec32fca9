import contextlib
import functools
import logging
import multiprocessing
import typing

from condlgm._types import ConditioningPoint
from condlgm.samplers._target_adapter import PointEvaluation, TargetAdapter


Evaluator = typing.Callable[[TargetAdapter,
                             typing.Sequence[ConditioningPoint]],
                            typing.List[PointEvaluation]]

logger = logging.getLogger(__name__)


def _evaluate(target: TargetAdapter,
              z: ConditioningPoint) -> PointEvaluation:
    return target.evaluate(z)


@contextlib.contextmanager
def evaluation_pool(workers: int = 1) -> typing.Iterator[Evaluator]:
    """
    Yield a function that evaluates a target at a batch of points. With more
    than one worker the batch is spread over a process pool; the results
    always come back in the order of the points.
    :param workers: the number of worker processes.
    :return: a context manager yielding the evaluator.
    """
    if workers <= 1:
        yield lambda target, points: [target.evaluate(z) for z in points]
        return
    logger.debug('Starting a pool of %d workers.', workers)
    with multiprocessing.Pool(processes=workers) as pool:
        yield lambda target, points: pool.map(
            functools.partial(_evaluate, target), points)
