"""Compare the numba and numpy kernel backends.

Run from the repository root:

    python benchmarks/bench_kernels.py [--pairs N] [--seed S]

Times exhaustive mapping scoring (small graphs) and hill climbing
(small and large graphs) on identical inputs for both backends, and checks
that both return the same counts.
"""

import argparse
import time

import numpy as np

from amrkit.random_graphs import random_graph, random_pair
from amrkit.smatch.align import _injections, build_tables
from amrkit.smatch.kernels import _numba, _numpy
from amrkit.triples import decompose


def workloads(n_pairs, seed):
    rng = np.random.default_rng(seed)
    small = [build_tables(*map(decompose, random_pair(rng, max_vars=7))) for _ in range(n_pairs)]
    large = []
    for _ in range(max(1, n_pairs // 5)):
        a = random_graph(rng, min_nodes=40, max_nodes=60)
        b = random_graph(rng, min_nodes=40, max_nodes=60)
        large.append(build_tables(decompose(a), decompose(b)))
    return small, large


def exhaustive(backend, tables):
    out = []
    for t in tables:
        n_a, n_b = len(t.a_vars), len(t.b_vars)
        if n_a <= n_b:
            out.append(int(backend.mapping_scores(_injections(n_a, n_b), *t.args()).max()))
    return out


def climbs(backend, tables):
    return [int(backend.hill_climb(np.full(len(t.a_vars), -1, dtype=np.int64), *t.args())[1]) for t in tables]


def timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    small, large = workloads(args.pairs, args.seed)
    # compile outside the timed region
    exhaustive(_numba, small[:3])
    climbs(_numba, small[:3])

    print(f"{'workload':<24}{'numba s':>10}{'numpy s':>10}{'speedup':>10}")
    for name, fn, tables in (
        ("exhaustive (<=7 vars)", exhaustive, small),
        ("hill climb (<=7 vars)", climbs, small),
        ("hill climb (40-60 vars)", climbs, large),
    ):
        r1, t1 = timed(fn, _numba, tables)
        r2, t2 = timed(fn, _numpy, tables)
        if r1 != r2:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<24}{t1:>10.3f}{t2:>10.3f}{t2 / t1:>9.1f}x")


if __name__ == "__main__":
    main()
