#!/usr/bin/env python3
"""Benchmark the compiled filter-bank kernels against the numpy fallback.

Usage: python benchmarks/bench_backends.py [--size 256] [--repeats 20]
"""

import argparse
import time

import numpy as np

import wavedeblur as wd
from wavedeblur import backend


def _time(fn, repeats: int) -> float:
    fn()  # warmup
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--repeats", type=int, default=20)
    args = ap.parse_args()

    rng = np.random.default_rng(7)
    img = rng.random((args.size, args.size))
    style = rng.random((args.size, args.size))
    cfg = wd.TransferConfig(level=3)

    cases = {
        "analysis_step": lambda: wd.haar_analysis_step(img),
        "packet L3": lambda: wd.packet_decompose(img, 3),
        "packet L8": lambda: wd.packet_decompose(img, 8),
        "roundtrip L3": lambda: wd.packet_reconstruct(wd.packet_decompose(img, 3)),
        "deblur L3": lambda: wd.deblur_idwt(img, style, cfg),
    }

    names = backend.available_backends()
    print(f"size {args.size}x{args.size}, best of {args.repeats} runs, times in ms")
    print(f"{'case':<16}" + "".join(f"{n:>12}" for n in names))
    results = {}
    for name in names:
        backend.set_backend(name)
        results[name] = {case: _time(fn, args.repeats) * 1e3 for case, fn in cases.items()}
    for case in cases:
        row = f"{case:<16}"
        for name in names:
            row += f"{results[name][case]:>12.3f}"
        print(row)


if __name__ == "__main__":
    main()
