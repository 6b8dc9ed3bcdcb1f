"""Wall-clock comparison of the compiled and numpy Verlet kernels.

    python3 benchmarks/bench_verlet.py [--sites 16 64 256] [--steps 20000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kgwaves import HardPotential, LatticeParams
from kgwaves._backend import available
from kgwaves.dynamics import LatticeState, integrate


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sites", type=int, nargs="+", default=[16, 64, 256])
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--dt", type=float, default=1e-3)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    pot = HardPotential.polynomial()
    backends = available()
    print(f"backends: {', '.join(backends)}; {args.steps} steps, best of {args.repeats}")
    print(f"{'N':>6} " + " ".join(f"{b + ' [s]':>14}" for b in backends) + f" {'speedup':>9}")
    for N in args.sites:
        lp = LatticeParams(N / 2, N, 0.5)
        n = np.arange(N)
        state = LatticeState(0.3 * np.sin(2 * np.pi * n / N), np.zeros(N))
        T = args.steps * args.dt
        res, finals = {}, {}
        for b in backends:
            res[b] = best_of(lambda: finals.__setitem__(
                b, integrate(state, lp, pot, args.dt, T, record_every=args.steps, backend=b)), args.repeats)
        if len(backends) > 1:
            diff = np.max(np.abs(finals["cython"].q - finals["python"].q))
            speed = f"{res['python'] / res['cython']:8.1f}x"
        else:
            diff, speed = 0.0, "      n/a"
        print(f"{N:>6} " + " ".join(f"{res[b]:14.4f}" for b in backends) + f" {speed}"
              + (f"   max |dq| {diff:.1e}" if len(backends) > 1 else ""))


if __name__ == "__main__":
    main()
