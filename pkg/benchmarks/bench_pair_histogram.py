"""Time the compiled and pure-Python pair-histogram kernels on an active random intersection graph.

    python3 benchmarks/bench_pair_histogram.py --n 10000 --size 10 --repeat 3
"""

from __future__ import annotations

import argparse
import time

from clusterfn import DiscretePMF, clustering
from clusterfn.active import sample_active
from clusterfn.graph import project_bipartite


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--size", type=int, default=10, help="common set size (ground set size = n)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    inc = sample_active(args.n, args.n, DiscretePMF.point(args.size), args.seed)
    g = project_bipartite(inc)
    print(f"graph: n={g.n} edges={g.num_edges} wedges={int((g.degrees * (g.degrees - 1)).sum() // 2)}")

    backends = ["python"]
    if clustering.BACKEND == "compiled":
        backends.insert(0, "compiled")
    else:
        print("compiled extension not built; timing the fallback only")
    results = {}
    for b in backends:
        t = best_of(lambda: clustering.pair_histogram(g, threads=args.threads, backend=b), args.repeat)
        results[b] = t
        print(f"{b:>9}: {t:.3f} s")
    if len(results) == 2:
        assert clustering.pair_histogram(g, backend="compiled") == clustering.pair_histogram(g, backend="python")
        print(f"  speedup: {results['python'] / results['compiled']:.1f}x (histograms identical)")


if __name__ == "__main__":
    main()
