"""Compare the compiled and pure-Python kernels on the hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload disables early stopping so both backends do the full search.
"""

import argparse
import time

import numpy as np

from graphent import _pykernels
from graphent.graph import Graph

try:
    from graphent import _ckernels
except ImportError:
    _ckernels = None


def random_rows(rng, n, p):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return list(Graph.from_edges(n, edges).rows)


def workloads(rng):
    rows16 = random_rows(rng, 16, 0.3)
    rows22 = random_rows(rng, 22, 0.3)
    rows50 = random_rows(rng, 50, 0.25)
    rows64 = random_rows(rng, 64, 0.1)
    ranks = [[int(x) for x in rng.integers(0, 2**62, size=40)] for _ in range(2000)]
    return [
        ("max_cut_rank n=16 (full)", lambda m: m.max_cut_rank(rows16, 16, 16)),
        ("max_cut_rank n=22 (full)", lambda m: m.max_cut_rank(rows22, 22, 22)),
        ("mis_search n=50 p=0.25", lambda m: m.mis_search(rows50, 50, 0, 50, 10**7)),
        ("mis_search n=64 p=0.10", lambda m: m.mis_search(rows64, 64, 0, 64, 10**7)),
        ("gf2_rank 2000 x 40x62", lambda m: [m.gf2_rank(r) for r in ranks]),
    ]


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels unavailable; only the Python timings are shown")
    print(f"{'workload':28s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in workloads(np.random.default_rng(args.seed)):
        tp, rp = timed(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:28s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, rc = timed(lambda: fn(_ckernels), args.repeat)
        # node counts may differ in bookkeeping; compare the answers
        same = rp[:2] == rc[:2] if isinstance(rp, tuple) else rp == rc
        flag = "" if same else "  MISMATCH"
        print(f"{name:28s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x{flag}")


if __name__ == "__main__":
    main()
