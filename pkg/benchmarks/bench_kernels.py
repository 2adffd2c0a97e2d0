"""Compare the Cython and NumPy trial kernels.

Two measurements per backend:
  kernel  detection and error counting on pre-drawn random variables
  sweep   full run_sweep including random draws

Usage: python3 benchmarks/bench_kernels.py [--trials N] [--repeats R]
"""
import argparse
import time

import numpy as np

from noma_drn.kernels import BACKENDS
from noma_drn.scenario import load_preset
from noma_drn.simulator import draw_trials, run_sweep, simulate_draws


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=1 << 18)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    cfg = load_preset("fig2-jml").with_(trials=args.trials, snr_grid_db=(10.0, 30.0))
    draws = draw_trials(cfg, cfg.n0(10.0), args.trials, np.random.default_rng(0))
    print(f"backends available: {', '.join(sorted(BACKENDS))}")
    print(f"{'backend':8s} {'stage':6s} {'ns/trial':>10s}")
    counts = {}
    for name in sorted(BACKENDS):
        t, counts[name] = best_of(lambda: simulate_draws(cfg, draws, True, name), args.repeats)
        print(f"{name:8s} {'kernel':6s} {t / args.trials * 1e9:10.1f}")
        t, _ = best_of(lambda: run_sweep(cfg, per_phase=True, backend=name), args.repeats)
        print(f"{name:8s} {'sweep':6s} {t / (2 * args.trials) * 1e9:10.1f}")
    if len(counts) > 1:
        same = len({tuple(c.tolist()) for c in counts.values()}) == 1
        print(f"identical error counts across backends: {same}")


if __name__ == "__main__":
    main()
