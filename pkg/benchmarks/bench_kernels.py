"""Compare the numba and numpy subset-inequality kernels on random batches.

    python benchmarks/bench_kernels.py [--rows 200000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from spectral_branes import _kernels


def best_of(fn, repeat, *args):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"numba available: {_kernels.HAVE_NUMBA}; default backend: {_kernels.BACKEND}")
    print(f"{'s':>3} {'rows':>9} {'numpy (s)':>11} {'numba (s)':>11} {'speedup':>8}")
    for s in range(2, 9):
        md = rng.integers(-6, 20, size=(args.rows, s), dtype=np.int64)
        weights = np.ones(s, dtype=np.int64)
        t_np = best_of(_kernels.classify_numpy, args.repeat, md, weights, 2)
        if _kernels.HAVE_NUMBA:
            _kernels.classify_numba(md[:1], weights, 2)  # compile outside the timing
            t_nb = best_of(_kernels.classify_numba, args.repeat, md, weights, 2)
            assert np.array_equal(_kernels.classify_numba(md, weights, 2), _kernels.classify_numpy(md, weights, 2))
            print(f"{s:>3} {args.rows:>9} {t_np:>11.4f} {t_nb:>11.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{s:>3} {args.rows:>9} {t_np:>11.4f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
