import numpy as np

from condlgm._types import ArrayLike


def mh_ess(values: ArrayLike) -> float:
    """
    The effective sample size of a Markov chain, ``n / tau`` with ``tau`` the
    integrated autocorrelation time estimated by the initial positive
    sequence: sums of consecutive pairs of autocorrelations are added while
    they stay positive.
    :param values: the chain of one scalar quantity.
    :return: the effective sample size, between 0 and ``n``.
    """
    values = np.atleast_1d(np.asarray(values, dtype=float))
    n = len(values)
    if n < 2:
        return float(n)
    centered = values - np.mean(values)
    if not np.any(centered):
        return float(n)
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, size)
    autocovariance = np.fft.irfft(spectrum * np.conj(spectrum), size)[:n]
    autocorrelation = autocovariance / autocovariance[0]

    tau = -1.0
    for k in range(0, n - 1, 2):
        pair = autocorrelation[k] + autocorrelation[k + 1]
        if pair <= 0:
            break
        tau += 2.0 * pair
    if tau <= 0:
        return float(n)
    return float(min(n, n / tau))
