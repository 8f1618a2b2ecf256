"""Time the compiled kernels against their pure-numpy fallbacks.

Both variants are timed directly, so the result does not depend on the
``CBIR_MKNN_DISABLE_NUMBA`` environment flag.  The compiled variants are
warmed up once before timing so JIT compilation is not measured.

Run from the repository root after installing the package:

    python3 benchmarks/bench_kernels.py
"""

import argparse
import time

import numpy as np

from cbir_mknn import _kernels


def best_ms(fn, args, repeats: int, number: int) -> float:
    """Best per-call time in milliseconds over several timing rounds."""
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(number):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / number)
    return best * 1e3


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=2000, help="matrix rows (default 2000)")
    parser.add_argument(
        "--pairwise-rows", type=int, default=500, help="rows for the pairwise case (default 500)"
    )
    parser.add_argument("--dims", type=int, default=48, help="vector length (default 48)")
    parser.add_argument(
        "--pixels", type=int, default=512 * 512, help="histogram input length (default 512*512)"
    )
    parser.add_argument("--bins", type=int, default=16, help="histogram bins (default 16)")
    parser.add_argument("--repeats", type=int, default=5, help="timing rounds (default 5)")
    parser.add_argument("--number", type=int, default=20, help="calls per round (default 20)")
    args = parser.parse_args()

    rng = np.random.default_rng(7)
    matrix = rng.random((args.rows, args.dims))
    small = rng.random((args.pairwise_rows, args.dims))
    query = rng.random(args.dims)
    pixels = rng.integers(0, 256, size=args.pixels, dtype=np.int64)

    cases = [
        ("sq_dists_to", _kernels._sq_dists_to_loop, _kernels._sq_dists_to_numpy, (matrix, query)),
        (
            "pairwise_sq_dists",
            _kernels._pairwise_sq_dists_loop,
            _kernels._pairwise_sq_dists_numpy,
            (small,),
        ),
        ("hist_counts", _kernels._hist_counts_loop, _kernels._hist_counts_numpy, (pixels, args.bins)),
    ]

    have_numba = _kernels.numba is not None
    if not have_numba:
        print("numba is not importable; timing the numpy fallbacks only")
    print(f"{'kernel':<20}  {'numba (ms)':>10}  {'numpy (ms)':>10}  {'speedup':>7}")
    for name, loop_fn, numpy_fn, case_args in cases:
        numpy_ms = best_ms(numpy_fn, case_args, args.repeats, args.number)
        if have_numba:
            compiled = _kernels.numba.njit(loop_fn)
            compiled(*case_args)
            numba_ms = best_ms(compiled, case_args, args.repeats, args.number)
            speedup = f"{numpy_ms / numba_ms:.1f}x"
            numba_text = f"{numba_ms:10.3f}"
        else:
            numba_text = f"{'-':>10}"
            speedup = "-"
        print(f"{name:<20}  {numba_text}  {numpy_ms:10.3f}  {speedup:>7}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
