"""Compare the compiled and pure-Python kernels on the workloads that dominate runtime.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from ruptureopt import _backend
from ruptureopt.optimizer import exhaustive_search
from ruptureopt.scenarios import get_problem


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    rng = np.random.default_rng(0)
    for name, m, n in (("population 200, N=1, M=4", 4, 1), ("population 200, N=2, M=5", 5, 2)):
        prob = get_problem(f"table1/m{m}/tg-5" if n == 1 else f"table2/m{m}/mmin{m}/tg00")
        genomes = np.round(rng.uniform(-0.1, 0.1, (200, m, n)), 2)
        yield name, lambda b, g=genomes, p=prob: _backend.population_scores(g, p.bounds, p.tau, p.m_min, b)
    prob = get_problem("table1/m4/tg0")
    yield "exhaustive N=1, M=4, step 0.01", lambda b, p=prob: exhaustive_search(p, 0.01, backend=b)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':34s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, fn in workloads():
        py = best_of(lambda: fn("python"), args.repeat)
        if "cython" in _backend.AVAILABLE:
            cy = best_of(lambda: fn("cython"), args.repeat)
            print(f"{name:34s} {py:11.4f} {cy:11.4f} {py / cy:7.0f}x")
        else:
            print(f"{name:34s} {py:11.4f} {'n/a':>11s} {'':>8s}")


if __name__ == "__main__":
    main()
