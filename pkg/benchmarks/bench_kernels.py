"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs once per backend to warm up (numba compiles on first
call), then ``--repeat`` timed runs; the best time is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from markedgroups import _kernels
from markedgroups.families.abels_lemmas import centralizer_lemma_data
from markedgroups.finite import library, normal_subgroups


def _fresh(name):
    return next(g for g in library.library(200) if g.name == name)


def lattice_workload(name):
    G = _fresh(name)

    def run():
        # bypass the per-group cache so every run does the work
        G._cache.clear()
        return len(normal_subgroups(G))

    return run


def closure_workload(name, seeds=200):
    G = _fresh(name)
    rng = np.random.default_rng(0)
    masks = []
    for _ in range(seeds):
        m = np.zeros(G.order, dtype=bool)
        m[rng.integers(1, G.order)] = True
        masks.append(m)
    gens = np.array(G.generators)

    def run():
        return sum(int(_kernels.normal_closure_mask(G.table, G.inverses, gens, m).sum()) for m in masks)

    return run


def scan_workload(q, blocks):
    def run():
        return centralizer_lemma_data(q, *blocks).size_C

    return run


WORKLOADS = {
    "normal_subgroups(C2xS4)": lattice_workload("C2xS4"),
    "normal_subgroups(C2xA5)": lattice_workload("C2xA5"),
    "200 normal closures in C3xS4": closure_workload("C3xS4"),
    "F_2 scan, blocks (1,2,1)": scan_workload(2, (1, 2, 1)),
    "F_3 scan, blocks (1,1,1)": scan_workload(3, (1, 1, 1)),
}


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'workload':<32}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, fn in WORKLOADS.items():
        times, results = {}, {}
        for backend in ("numba", "numpy"):
            _kernels.set_backend(backend)
            results[backend] = fn()  # warm-up, also checks agreement
            times[backend] = best_time(fn, args.repeat)
        if results["numba"] != results["numpy"]:
            raise SystemExit(f"backends disagree on {name}: {results}")
        print(f"{name:<32}{times['numba']:>12.4f}{times['numpy']:>12.4f}{times['numpy'] / times['numba']:>9.1f}x")


if __name__ == "__main__":
    main()
