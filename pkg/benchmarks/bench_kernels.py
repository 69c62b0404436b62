"""Benchmark the compiled per-trial kernel against the NumPy fallback.

Runs the same batches through every available backend, checks that they
agree, and reports throughput.  Example:

    python3 benchmarks/bench_kernels.py --trials 20000 --N 64
"""

import argparse
import time

import numpy as np

from speckle_squeeze import kernels
from speckle_squeeze.medium import MediumConfig, coefficient_scales
from speckle_squeeze.montecarlo import ExperimentSpec, _state_blocks, trial_rng


def make_problem(family, n, k, trials, wfs, seed):
    spec = ExperimentSpec(
        family=family,
        r=1.0,
        g=0.6,
        medium=MediumConfig(N=n, s=2.0),
        K=k,
        wfs=wfs,
        trials=trials,
        seed=seed,
    )
    z = np.empty((trials, 4 * n))
    for i in range(trials):
        z[i] = trial_rng(spec.seed, i).standard_normal(4 * n)
    sigma_t, sigma_r = coefficient_scales(spec.medium)
    return (z, n, sigma_t, sigma_r, wfs, *_state_blocks(spec))


def bench(fn, args, repeats):
    fn(*args)  # warm up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--N", type=int, default=64)
    parser.add_argument("--K", type=int, default=None)
    parser.add_argument("--trials", type=int, default=20000)
    parser.add_argument("--family", choices=("coherent", "single", "two"), default="single")
    parser.add_argument("--wfs", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    problem = make_problem(args.family, args.N, args.K, args.trials, args.wfs, args.seed)
    backends = kernels.available_backends()
    print(f"active backend: {kernels.BACKEND}; testing {list(backends)}")
    print(f"family={args.family} N={args.N} trials={args.trials} wfs={args.wfs}")

    results = {}
    for name, fn in backends.items():
        out = fn(*problem)
        results[name] = out
        dt = bench(fn, problem, args.repeats)
        print(f"{name:>9}: {dt * 1e3:8.2f} ms  ({args.trials / dt / 1e6:6.2f} M trials/s)")

    if len(results) == 2:
        worst = max(
            float(np.max(np.abs(a - b)))
            for a, b in zip(results["fallback"], results["compiled"])
        )
        print(f"max |fallback - compiled| over all outputs: {worst:.2e}")
        assert worst < 1e-10, "backends disagree"


if __name__ == "__main__":
    main()
