"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--bits 20000] [--repeat 3]

Prints wall time per kernel and backend, and checks both backends return
identical results.
"""
import argparse
import time

import numpy as np

from henonseq import _pure, calibrate, preset

try:
    from henonseq import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bits", type=int, default=20000)
    ap.add_argument("--bma-bits", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cfg = preset("U1")
    th, (x, y, k) = calibrate(cfg)
    gen_args = (1.4, 0.3, x, y, k, th.tau_x, th.tau_y, cfg.P, args.bits, 0, 1, 1e6)
    seq = np.random.default_rng(0).integers(0, 2, args.bma_bits).astype(np.uint8)

    cases = [
        (f"henon_bits  ({args.bits} bits, P={cfg.P}, {args.bits * cfg.P:.2e} iterations)",
         lambda m: m.henon_bits(*gen_args)),
        (f"orbit_block (1e6 iterations)", lambda m: m.orbit_block(1.4, 0.3, x, y, k, 10**6, 1e6)[2:]),
        (f"berlekamp_massey profile ({args.bma_bits} bits)",
         lambda m: (lambda r: (r[0], r[1], r[2].tolist()))(m.berlekamp_massey(seq, True))),
    ]
    backends = [("pure", _pure)] + ([("compiled", _core)] if _core is not None else [])
    for title, fn in cases:
        print(title)
        results = {}
        times = {}
        for name, mod in backends:
            times[name], results[name] = best_of(lambda: fn(mod), args.repeat)
            print(f"  {name:9s} {times[name] * 1e3:10.2f} ms")
        if len(backends) == 2:
            same = results["pure"] == results["compiled"]
            print(f"  speedup   {times['pure'] / times['compiled']:10.1f}x   identical: {same}")
    if _core is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
