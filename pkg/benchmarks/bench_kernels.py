"""Time the permutation-action kernel in both backends.

    python benchmarks/bench_kernels.py [--repeat 5]

The pure-Python kernel caches results; the cache is cleared before every
call so both sides do the same work.
"""
import argparse
import timeit

import numpy as np

from heiscat import _kernels_py, kernels

CASES = [
    ((5,), 4, (1, 0, 2, 3, 4)),
    ((6, 5), 4, (0, 2, 1, 3, 4, 5)),
    ((7, 6, 5), 4, (3, 1, 2, 0, 4, 5, 6)),
    ((6, 6, 6), 5, (5, 4, 3, 2, 1, 0)),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.act_compiled is None:
        print("compiled kernel not built; only the Python fallback is available")
    print(f"{'uplevels':>12} {'n':>2} {'dim':>8} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for ups, n, sigma in CASES:
        def run_py():
            _kernels_py._act.cache_clear()
            return _kernels_py.act(ups, n, sigma)

        py = min(timeit.repeat(run_py, number=1, repeat=args.repeat)) * 1e3
        dim = len(run_py())
        if kernels.act_compiled is not None:
            assert np.array_equal(run_py(), kernels.act_compiled(ups, n, sigma))
            cc = min(timeit.repeat(lambda: kernels.act_compiled(ups, n, sigma), number=1, repeat=args.repeat)) * 1e3
            print(f"{str(ups):>12} {n:>2} {dim:>8} {py:>10.2f} {cc:>12.2f} {py / cc:>7.1f}x")
        else:
            print(f"{str(ups):>12} {n:>2} {dim:>8} {py:>10.2f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
