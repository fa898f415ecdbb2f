"""Compare the compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``. Each row
reports the best-of-N wall time per call for both backends and the
speed-up; outputs are checked for agreement before timing.
"""
import argparse
import timeit

import numpy as np

from pointkernel import _kernels_py as py

try:
    from pointkernel import _kernels as cy
except ImportError:
    cy = None


def cases(rng):
    n = 200_000
    ks = rng.uniform(0.01, 20, n)
    c = rng.uniform(-50, 50, (4, n))
    ys = np.concatenate([-np.geomspace(3, 0.01, 400), np.geomspace(0.01, 3, 400)])
    xs = ys[::4].copy()
    return [
        ("heat_kernel (scalar x 1e4)", lambda m: [m.heat_kernel(0.3 + 1e-5 * j, 0.7) for j in range(10_000)]),
        ("free_kernel (scalar x 1e4)", lambda m: [m.free_kernel(0.3 + 1e-5 * j, 0.7) for j in range(10_000)]),
        ("scattering_sweep 2e5 k", lambda m: m.scattering_sweep(1.5, -0.3, 2.0, 0.7, ks)),
        ("unitarity_defects 2e5 draws", lambda m: m.unitarity_defects(*c, ks)),
        ("delta_prime_grid 800x200 imag", lambda m: m.delta_prime_grid(0.9, ys, xs, 1.0, True)),
        ("delta_prime_grid 800x200 real", lambda m: m.delta_prime_grid(0.9, ys, xs, 1.0, False)),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if cy is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation` first")

    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speed-up':>9s}")
    for name, fn in cases(rng):
        np.testing.assert_allclose(np.asarray(fn(cy)), np.asarray(fn(py)), rtol=1e-12, atol=1e-14)
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:32s} {1e3 * t_py:12.2f} {1e3 * t_cy:12.2f} {t_py / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
