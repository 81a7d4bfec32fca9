import numpy as np


def substream(seed: int, *path: int) -> np.random.Generator:
    """
    Return the counter based random stream identified by ``(seed, *path)``.
    Every (round, sample index) pair gets its own stream, so the draws do not
    depend on the order in which samples are processed.
    :param seed: the master seed, a nonnegative 64 bit integer.
    :param path: the nonnegative integers that identify the stream.
    :return: a ``numpy.random.Generator`` backed by ``Philox``.
    """
    if seed < 0 or any(part < 0 for part in path):
        raise ValueError('Seeds and stream indices must be nonnegative, got '
                         '{} and {}.'.format(seed, path))
    sequence = np.random.SeedSequence([int(seed)] + [int(p) for p in path])
    return np.random.Generator(np.random.Philox(sequence))
