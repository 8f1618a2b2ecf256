"""Hot numeric kernels: squared distances and histogram counts.

Each kernel exists twice: a plain-loop version compiled with numba's
``@njit`` when numba is importable, and a vectorized numpy version used
otherwise.  Setting ``CBIR_MKNN_DISABLE_NUMBA=1`` in the environment
forces the numpy path; ``benchmarks/bench_kernels.py`` times the two
against each other.

All float kernels take and return float64; histogram input must be int64
so bin arithmetic cannot overflow.  Squared distances are returned (not
square roots) so callers can defer the sqrt to the values they keep.
"""

import os

import numpy as np

try:
    import numba
except ImportError:
    numba = None


def numba_disabled_by_env() -> bool:
    return os.environ.get("CBIR_MKNN_DISABLE_NUMBA", "0") not in ("", "0")


def _sq_dists_to_loop(matrix, query):
    n, d = matrix.shape
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for j in range(d):
            diff = matrix[i, j] - query[j]
            acc += diff * diff
        out[i] = acc
    return out


def _sq_dists_to_numpy(matrix, query):
    diff = matrix - query
    return (diff * diff).sum(axis=1)


def _pairwise_sq_dists_loop(matrix):
    n, d = matrix.shape
    out = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for m in range(d):
                diff = matrix[i, m] - matrix[j, m]
                acc += diff * diff
            out[i, j] = acc
            out[j, i] = acc
    return out


def _pairwise_sq_dists_numpy(matrix):
    n = matrix.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        diff = matrix - matrix[i]
        out[i] = (diff * diff).sum(axis=1)
    return out


def _hist_counts_loop(values, bins):
    counts = np.zeros(bins, dtype=np.int64)
    for i in range(values.shape[0]):
        counts[(values[i] * bins) >> 8] += 1
    return counts


def _hist_counts_numpy(values, bins):
    return np.bincount((values * bins) >> 8, minlength=bins)


USING_NUMBA = numba is not None and not numba_disabled_by_env()

if USING_NUMBA:
    sq_dists_to = numba.njit(_sq_dists_to_loop)
    pairwise_sq_dists = numba.njit(_pairwise_sq_dists_loop)
    hist_counts = numba.njit(_hist_counts_loop)
else:
    sq_dists_to = _sq_dists_to_numpy
    pairwise_sq_dists = _pairwise_sq_dists_numpy
    hist_counts = _hist_counts_numpy
