"""Compare the compiled and numpy implementations of the angular mode kernel.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case evaluates all orders ``0..n_top`` on a graded angle rule, the
unit of work inside every spectral evaluation.
"""
import argparse
import time

import numpy as np

from cylrad.kernels import compiled_available, get_backend
from cylrad.quadrature import angle_rule
from cylrad.radiation import truncation_seed

CASES = [
    ("SiC, kR=0.01", 6.0 + 0.1j, 6.0 + 0.1j, 0.01, 64),
    ("gold, kR=1", -1.2e4 + 4e3j, -1.2e4 + 4e3j, 1.0, 128),
    ("gold, kR=20", -1.2e4 + 4e3j, -1.2e4 + 4e3j, 20.0, 512),
    ("graphite, kR=5", -50 + 80j, 3 + 0.5j, 5.0, 256),
]


def best_time(fn, repeat):
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
    backends = ["python"] + (["compiled"] if compiled_available() else [])
    print(f"{'case':<18s} {'nodes':>5s} {'n_top':>5s} "
          + " ".join(f"{b:>12s}" for b in backends) + "   speedup  max_rel_diff")
    for label, er, ez, kR, nodes in CASES:
        rule = angle_rule(nodes)
        n_top = truncation_seed(kR) + 3
        times, outs = [], []
        for b in backends:
            mod = get_backend(b)

            def call(mod=mod):
                return mod.mode_orders(er, ez, 1.0, kR, rule.cos_t, rule.sin_t, rule.weights, n_top)

            outs.append(call())
            times.append(best_time(call, args.repeat))
        diff = 0.0
        if len(outs) == 2:
            for a, c in zip(outs[0][:4], outs[1][:4]):
                a, c = np.asarray(a), np.asarray(c)
                diff = max(diff, float(np.max(np.abs(a - c) / np.maximum(np.abs(a), 1e-300))))
        speed = times[0] / times[-1]
        print(f"{label:<18s} {nodes:5d} {n_top:5d} "
              + " ".join(f"{t * 1e3:10.3f}ms" for t in times) + f"   {speed:6.1f}x  {diff:.2e}")


if __name__ == "__main__":
    main()
