"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Runs on the shipped 14-run, 23-factor design: full WHT spectrum (2^23
subsets), per-column histograms over it, and depth-first enumeration up to
k = 6.  Each kernel is warmed once so numba compile time is excluded.
"""

import argparse
import time
from math import comb

import numpy as np

from seaskit import _accel, alias_core, kernels, report
from seaskit.design_io import decode_design_vector


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    x = decode_design_vector(report.builtin_design("D_SIB"))
    m, n = x.n_factors, x.n_runs
    hist = np.bincount(x.run_codes, minlength=1 << m).astype(np.int32)
    spec = alias_core.full_spectrum_wht(x)
    sizes = kernels.subset_sizes(m)
    cols = np.ascontiguousarray(x.columns, dtype=np.int32)
    total = sum(comb(m, k) for k in range(1, 7))

    cases = {
        "wht 2^23": (lambda: kernels.wht_numba(hist.copy()),
                     lambda: kernels.wht_numpy(hist.copy())),
        "column histograms": (
            lambda: kernels.column_histograms_numba(None, spec.j_abs, sizes, m, n, m),
            lambda: kernels.column_histograms_numpy(None, spec.j_abs, sizes, m, n, m)),
        "enumeration k<=6": (lambda: kernels.enumerate_numba(cols, 6, total),
                             lambda: kernels.enumerate_numpy(cols, 6, total)),
    }
    print(f"numba available: {_accel.HAVE_NUMBA}")
    print(f"{'kernel':<20}{'numba s':>10}{'numpy s':>10}{'speedup':>10}")
    for name, (fast, slow) in cases.items():
        fast()
        t_fast = best_of(fast, args.repeat)
        t_slow = best_of(slow, args.repeat)
        print(f"{name:<20}{t_fast:>10.3f}{t_slow:>10.3f}{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
