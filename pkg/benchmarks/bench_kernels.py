"""Compare the compiled and pure-Python Jacobi kernels.

    python benchmarks/bench_kernels.py [--sizes 4 8 16 32 64] [--repeat 5]

Prints, per size, the median time of one complex SVD with each kernel, the
speed-up, and the largest difference in singular values between the two.
"""
import argparse
import statistics
import time

import numpy as np

from dualhs.kernels import BACKEND, KERNELS
from dualhs.svd import complex_svd


def time_call(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    print(f"kernels available: {sorted(KERNELS)}; default backend: {BACKEND}")
    if "cython" not in KERNELS:
        print("compiled kernel not built; only the Python kernel is timed")
    rng = np.random.default_rng(args.seed)
    header = f"{'n':>4} {'python [ms]':>12} {'cython [ms]':>12} {'speed-up':>9} {'max |ds|':>10}"
    print(header)
    for n in args.sizes:
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        t_py, (_, s_py, _) = time_call(lambda: complex_svd(a, backend="python"), args.repeat)
        if "cython" in KERNELS:
            t_cy, (_, s_cy, _) = time_call(lambda: complex_svd(a, backend="cython"), args.repeat)
            diff = float(np.abs(s_py - s_cy).max())
            print(f"{n:>4} {1e3 * t_py:>12.2f} {1e3 * t_cy:>12.2f} {t_py / t_cy:>8.1f}x {diff:>10.1e}")
        else:
            print(f"{n:>4} {1e3 * t_py:>12.2f} {'-':>12} {'-':>9} {'-':>10}")


if __name__ == "__main__":
    main()
