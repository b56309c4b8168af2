"""Common-neighbour pair histograms and the clustering functions cl(r), Cl(r)."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError

try:
    from . import _kernels as _backend_compiled
except ImportError:  # extension not built
    _backend_compiled = None
from . import _fallback as _backend_python

BACKEND = "compiled" if _backend_compiled is not None else "python"
STRATEGIES = ("wedge_map", "oracle")


def _kernel(backend: str):
    if backend == "auto":
        backend = BACKEND
    if backend == "compiled":
        if _backend_compiled is None:
            raise RuntimeError("compiled kernels are not available; reinstall with a C compiler")
        return _backend_compiled.pair_histogram_range
    if backend == "python":
        return _backend_python.pair_histogram_range
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class PairHistogram:
    """Joint counts of (adjacent?, number of common neighbours) over unordered pairs.

    ``total[r]`` counts pairs with exactly ``r`` common neighbours and
    ``adjacent[r]`` those of them that are edges. Row 0 is obtained by
    complement, never by enumeration.
    """

    n: int
    num_edges: int
    total: tuple[int, ...]
    adjacent: tuple[int, ...]

    @property
    def max_r(self) -> int:
        return len(self.total) - 1

    def check(self) -> None:
        n = self.n
        if sum(self.total) != n * (n - 1) // 2:
            raise AssertionError("total pair counts do not sum to n(n-1)/2")
        if sum(self.adjacent) != self.num_edges:
            raise AssertionError("adjacent pair counts do not sum to the edge count")
        if any(a > t or a < 0 for a, t in zip(self.adjacent, self.total)):
            raise AssertionError("adjacent count exceeds total count")

    @property
    def triangles(self) -> int:
        # an edge with r common neighbours lies in r triangles
        return sum(r * a for r, a in enumerate(self.adjacent)) // 3


def _trim(total, adjacent):
    total = [int(x) for x in total]
    adjacent = [int(x) for x in adjacent]
    k = len(total)
    while k > 1 and total[k - 1] == 0:
        k -= 1
    return tuple(total[:k]), tuple(adjacent[:k])


def _finish(g: Graph, total, adjacent) -> PairHistogram:
    n, e = g.n, g.num_edges
    total = np.asarray(total, dtype=np.int64).copy()
    adjacent = np.asarray(adjacent, dtype=np.int64).copy()
    total[0] = n * (n - 1) // 2 - int(total[1:].sum())
    adjacent[0] = e - int(adjacent[1:].sum())
    t, a = _trim(total, adjacent)
    return PairHistogram(n, e, t, a)


def _balanced_ranges(g: Graph, parts: int) -> list[tuple[int, int]]:
    deg = g.degrees
    work = np.zeros(g.n + 1, dtype=np.float64)
    np.cumsum(np.bincount(np.repeat(np.arange(g.n), deg), weights=deg[g.indices], minlength=g.n) + 1,
              out=work[1:])
    cuts = np.searchsorted(work, np.linspace(0, work[-1], parts + 1))
    cuts[0], cuts[-1] = 0, g.n
    cuts = np.maximum.accumulate(cuts)
    return [(int(a), int(b)) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


def pair_histogram(g: Graph, strategy: str = "wedge_map", *, threads: int = 1,
                   backend: str = "auto") -> PairHistogram:
    """Exact histogram of common-neighbour counts over all unordered vertex pairs.

    ``wedge_map`` walks every wedge ``u - w - v`` once per source ``u`` into a
    dense per-source counter (cost ``sum_v d(v)^2``, memory ``O(n)``); vertex
    ranges run on ``threads`` workers and their integer histograms are summed,
    so the result does not depend on the worker count. ``oracle`` intersects
    the sorted neighbour lists of all pairs and is meant for testing.
    """
    if g.n < 2:
        raise GraphError("pair histogram needs at least two vertices")
    if strategy == "oracle":
        return _oracle_histogram(g)
    if strategy != "wedge_map":
        raise ValueError(f"unknown strategy {strategy!r}")
    kernel = _kernel(backend)
    max_r = int(g.degrees.max()) if g.n else 0
    ranges = _balanced_ranges(g, max(1, threads) * 4 if threads > 1 else 1)
    args = (g.indptr, g.indices, g.n)
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: kernel(*args, r[0], r[1], max_r), ranges))
    else:
        parts = [kernel(*args, lo, hi, max_r) for lo, hi in ranges]
    total = np.zeros(max_r + 1, dtype=np.int64)
    adjacent = np.zeros(max_r + 1, dtype=np.int64)
    for t, a in parts:
        total += t
        adjacent += a
    return _finish(g, total, adjacent)


def _oracle_histogram(g: Graph) -> PairHistogram:
    nbrs = [set(g.neighbors(v).tolist()) for v in range(g.n)]
    total: dict[int, int] = {}
    adjacent: dict[int, int] = {}
    for u, v in itertools.combinations(range(g.n), 2):
        r = len(nbrs[u] & nbrs[v])
        total[r] = total.get(r, 0) + 1
        if v in nbrs[u]:
            adjacent[r] = adjacent.get(r, 0) + 1
    k = max(total) + 1
    return PairHistogram(g.n, g.num_edges,
                         *_trim([total.get(r, 0) for r in range(k)],
                                [adjacent.get(r, 0) for r in range(k)]))


@dataclass(frozen=True)
class ClusteringProfile:
    """cl(r), Cl(r), the global clustering coefficient and the edge density.

    Ratios with a zero denominator are absent from ``cl``/``Cl``; ``C`` is
    ``None`` when the graph has no wedges.
    """

    histogram: PairHistogram
    cl: dict[int, float]
    Cl: dict[int, float]
    C: float | None
    p_e: float
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.histogram.n

    @property
    def num_edges(self) -> int:
        return self.histogram.num_edges


def profile_from_histogram(h: PairHistogram, wedges: int, metadata=None) -> ClusteringProfile:
    """Derive cl, Cl, C and p_e from a histogram; ``wedges`` is ``sum_v d(v)(d(v)-1)``."""
    cl = {r: a / t for r, (t, a) in enumerate(zip(h.total, h.adjacent)) if t > 0}
    Cl = {}
    tail_t = tail_a = 0
    for r in range(h.max_r, -1, -1):
        tail_t += h.total[r]
        tail_a += h.adjacent[r]
        if tail_t > 0:
            Cl[r] = tail_a / tail_t
    Cl = dict(sorted(Cl.items()))
    C = 6 * h.triangles / wedges if wedges > 0 else None
    p_e = 2 * h.num_edges / (h.n * (h.n - 1))
    return ClusteringProfile(h, cl, Cl, C, p_e, dict(metadata or {}))


def _wedges(g: Graph) -> int:
    d = g.degrees
    return int((d * (d - 1)).sum())


def clustering_profile(g: Graph, strategy: str = "wedge_map", *, threads: int = 1,
                       backend: str = "auto", metadata=None) -> ClusteringProfile:
    h = pair_histogram(g, strategy, threads=threads, backend=backend)
    return profile_from_histogram(h, _wedges(g), metadata)


def global_clustering_coefficient(g: Graph, *, threads: int = 1) -> float | None:
    """``6 T / sum_v d(v)(d(v)-1)``, or ``None`` when there are no wedges."""
    if g.n < 3:
        return None
    w = _wedges(g)
    if w == 0:
        return None
    return 6 * pair_histogram(g, threads=threads).triangles / w
