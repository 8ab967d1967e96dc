"""Time each hot kernel on both backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Inputs are the sizes the IND m=2, N=8 verification actually hits.
"""

import argparse
import time

import numpy as np

from liftlab import _kernels


def workloads(rng):
    ys = np.flatnonzero(_kernels.py.pattern_member_mask(2, 8, 3, 8, 2)).astype(np.int64)
    xs = rng.integers(0, 2, size=(256, 8), dtype=np.int64)
    vals = rng.integers(0, 4, size=(40000, 8), dtype=np.int64)
    blocks = np.arange(6, dtype=np.int64)
    sig = rng.integers(0, 1 << 12, size=400, dtype=np.int64)
    return {
        "pattern_member_mask": lambda k: k.pattern_member_mask(2, 8, 3, 8, 2),
        "projection_max": lambda k: k.projection_max(vals, 4, blocks),
        "ind_image_mask": lambda k: k.ind_image_mask(xs, ys, 2, 8),
        "product_image_mask": lambda k: k.product_image_mask(sig, sig[::-1].copy(), 12),
    }


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = _kernels.backends()
    loads = workloads(np.random.default_rng(0))
    names = sorted(backends)
    print(f"{'kernel':<22}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for kernel, fn in loads.items():
        times = {n: best_of(lambda: fn(backends[n]), args.repeat) for n in names}
        row = f"{kernel:<22}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)
    if len(names) == 1:
        print("compiled backend not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
