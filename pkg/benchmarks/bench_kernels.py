"""Time the float Bessel kernels under both backends.

    python3 benchmarks/bench_kernels.py [--points N] [--repeat R]
"""
import argparse
import timeit

import numpy as np

from treeentropy import kernels
from treeentropy.besselcheck import h_bessel


def best_of(fn, repeat: int) -> float:
    fn()  # warm-up, includes numba compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    t = np.geomspace(1e-6, 1e3, args.points)
    rows = []
    for backend in ("numpy", "numba"):
        rows.append((backend,
                     best_of(lambda: kernels.i0e(t, backend), args.repeat),
                     best_of(lambda: kernels.bessel_integrand(t, 4, backend), args.repeat),
                     best_of(lambda: h_bessel(4, backend=backend), args.repeat)))
    print(f"{'backend':8s} {'i0e':>10s} {'integrand':>10s} {'h_bessel(4)':>12s}   ({args.points} points)")
    for name, a, b, c in rows:
        print(f"{name:8s} {a:9.4f}s {b:9.4f}s {c:11.4f}s")


if __name__ == "__main__":
    main()
