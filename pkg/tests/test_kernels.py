"""Tests for the numeric kernels and the numba/numpy selection flag."""

import os
import subprocess
import sys

import numpy as np
import pytest

import oracle
from cbir_mknn import Lcg64
from cbir_mknn import _kernels


def random_matrix(rng, n, d):
    return np.array([[rng.uniform() for _ in range(d)] for _ in range(n)])


def all_variants(name):
    return [
        getattr(_kernels, name),
        getattr(_kernels, f"_{name}_loop"),
        getattr(_kernels, f"_{name}_numpy"),
    ]


@pytest.mark.parametrize("fn", all_variants("sq_dists_to"))
def test_sq_dists_to_matches_oracle(fn):
    rng = Lcg64(100)
    for _ in range(20):
        matrix = random_matrix(rng, 1 + rng.below(12), 1 + rng.below(5))
        query = np.array([rng.uniform() for _ in range(matrix.shape[1])])
        got = fn(matrix, query)
        expected = [oracle.sq_dist(list(row), list(query)) for row in matrix]
        assert np.allclose(got, expected, rtol=1e-12, atol=0)


def test_active_sq_dists_matches_loop_exactly_on_small_dims():
    # The loop accumulates left to right; at d <= 4 the numpy fallback
    # reduces in the same order, so both selections agree bitwise with
    # the oracle's plain-Python arithmetic.
    rng = Lcg64(101)
    for _ in range(50):
        matrix = random_matrix(rng, 1 + rng.below(10), 1 + rng.below(4))
        query = np.array([rng.uniform() for _ in range(matrix.shape[1])])
        got = _kernels.sq_dists_to(matrix, query)
        expected = [oracle.sq_dist(list(row), list(query)) for row in matrix]
        assert list(got) == expected


@pytest.mark.parametrize("fn", all_variants("pairwise_sq_dists"))
def test_pairwise_matches_oracle(fn):
    rng = Lcg64(102)
    matrix = random_matrix(rng, 10, 3)
    got = fn(matrix)
    for i in range(10):
        for j in range(10):
            expected = oracle.sq_dist(list(matrix[i]), list(matrix[j]))
            assert got[i, j] == pytest.approx(expected, rel=1e-12, abs=0)


@pytest.mark.parametrize("fn", all_variants("pairwise_sq_dists"))
def test_pairwise_symmetric_zero_diagonal(fn):
    rng = Lcg64(103)
    matrix = random_matrix(rng, 8, 4)
    got = fn(matrix)
    assert np.array_equal(got, got.T)
    assert np.all(np.diag(got) == 0.0)


@pytest.mark.parametrize("fn", all_variants("hist_counts"))
@pytest.mark.parametrize("bins", [2, 16, 37, 256])
def test_hist_counts_bin_rule(fn, bins):
    values = np.arange(256, dtype=np.int64)
    counts = fn(values, bins)
    expected = [0] * bins
    for v in range(256):
        expected[(v * bins) // 256] += 1
    assert list(counts) == expected
    assert sum(counts) == 256


@pytest.mark.parametrize("fn", all_variants("hist_counts"))
def test_hist_counts_random_input(fn):
    rng = Lcg64(104)
    values = np.array([rng.below(256) for _ in range(1000)], dtype=np.int64)
    counts = fn(values, 16)
    expected = [0] * 16
    for v in values:
        expected[(int(v) * 16) // 256] += 1
    assert list(counts) == expected


def test_loop_and_numpy_variants_agree():
    rng = Lcg64(105)
    matrix = random_matrix(rng, 12, 48)
    query = np.array([rng.uniform() for _ in range(48)])
    assert np.allclose(
        _kernels._sq_dists_to_loop(matrix, query),
        _kernels._sq_dists_to_numpy(matrix, query),
        rtol=1e-12,
    )
    assert np.allclose(
        _kernels._pairwise_sq_dists_loop(matrix),
        _kernels._pairwise_sq_dists_numpy(matrix),
        rtol=1e-12,
    )
    values = np.array([rng.below(256) for _ in range(500)], dtype=np.int64)
    assert np.array_equal(
        _kernels._hist_counts_loop(values, 16), _kernels._hist_counts_numpy(values, 16)
    )


@pytest.mark.parametrize("flag,expect_numba", [("", True), ("0", True), ("1", False)])
def test_env_flag_selects_implementation(flag, expect_numba):
    code = (
        "from cbir_mknn import _kernels\n"
        "import numpy as np\n"
        "print(_kernels.USING_NUMBA)\n"
        "print([float(x) for x in _kernels.sq_dists_to("
        "np.array([[0.0, 0.0], [3.0, 4.0]]), np.array([0.0, 0.0]))])\n"
    )
    env = dict(os.environ, CBIR_MKNN_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    using, dists = out.stdout.strip().split("\n")
    expected = "True" if expect_numba and _kernels.numba is not None else "False"
    assert using == expected
    assert dists == "[0.0, 25.0]"
