"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 200] [--sizes 4 8 16 32]

Times the three dense kernels and a short campaign slice on each available
backend and prints the speedup of the compiled one.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from logmaj import linalg
from logmaj._backend import available_backends, use_backend
from logmaj.generators import GenConfig, random_matrix, random_psd
from logmaj.harness import CampaignConfig, run_campaign


def kernel_cases(n: int) -> dict[str, tuple]:
    h = random_psd(GenConfig(seed=n, n=n))
    g = random_matrix(GenConfig(seed=n + 1, n=n))
    return {
        "hermitian_eig": (linalg.hermitian_eig, h),
        "singular_values": (linalg.singular_values, g),
        "eigvals": (linalg.eigvals, g),
    }


def best_of(fn, arg, repeat: int) -> float:
    """Best per-call time in microseconds over 5 timing runs."""
    return min(timeit.repeat(lambda: fn(arg), number=repeat, repeat=5)) / repeat * 1e6


def campaign_slice() -> float:
    cfg = CampaignConfig(checks=("main_bounds", "marcus_bounds", "nested_frame_det_bound"), dims=(4, 8), trials=20)
    return run_campaign(cfg).wall_time


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    args = ap.parse_args()

    backends = sorted(available_backends())
    print(f"backends: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled extension not built; only the fallback is timed")

    header = f"{'kernel':16} {'n':>3} " + " ".join(f"{b + ' us':>12}" for b in backends)
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)
    for n in args.sizes:
        for name, (fn, arg) in kernel_cases(n).items():
            times = {}
            for b in backends:
                with use_backend(b):
                    fn(arg)  # warm-up
                    times[b] = best_of(fn, arg, max(1, args.repeat // max(1, n // 8)))
            row = f"{name:16} {n:>3} " + " ".join(f"{times[b]:12.1f}" for b in backends)
            if len(backends) == 2:
                row += f" {times['python'] / times['compiled']:8.1f}x"
            print(row)

    print()
    for b in backends:
        with use_backend(b):
            print(f"campaign slice ({b}): {campaign_slice():.2f} s")

    # both backends must agree on the spectra they produce
    if len(backends) == 2:
        h = kernel_cases(16)["hermitian_eig"][1]
        with use_backend("compiled"):
            wc = linalg.eigvalsh(h)
        with use_backend("python"):
            wp = linalg.eigvalsh(h)
        print(f"max eigenvalue difference between backends (n=16): {np.max(np.abs(wc - wp)):.2e}")


if __name__ == "__main__":
    main()
