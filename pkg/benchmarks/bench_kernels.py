"""Compare the numba kernels against the pure-numpy fallback.

Run ``python3 benchmarks/bench_kernels.py``; set ``QWMP_DISABLE_NUMBA=1`` to
confirm the library runs without numba at all.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from qwmp import _kernels


def _time(fn, repeat):
    fn()  # warm-up (JIT compilation on the numba path)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench(label, fn, repeat):
    out = {}
    for flag in (False, True):
        if flag and _kernels.numba is None:
            continue
        _kernels.USE_NUMBA = flag
        out["numba" if flag else "numpy"] = (_time(fn, repeat), fn())
    _kernels.USE_NUMBA = _kernels.numba is not None
    line = f"{label:<28}"
    for k, (t, _) in out.items():
        line += f"  {k}: {t * 1e3:9.3f} ms"
    if len(out) == 2:
        (t0, r0), (t1, r1) = out["numpy"], out["numba"]
        line += f"  speedup x{t0 / t1:6.1f}  max|diff| {np.abs(r0 - r1).max():.1e}"
    print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)

    for n in (8, 30, 60):
        A = rng.standard_normal((n, n, 4))
        B = rng.standard_normal((n, n, 4))
        bench(f"qmatmul {n}x{n}", lambda A=A, B=B: _kernels.qmatmul(A, B), args.repeat)

    for n in (5, 6, 7, 8):
        A = rng.standard_normal((n, n, 4))
        _kernels.expansion_terms(n, 0, "row")
        bench(f"rdet expansion n={n}", lambda A=A: _kernels.det_expansion(A, 0, "row"), args.repeat)


if __name__ == "__main__":
    main()
