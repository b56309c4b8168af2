"""Graph and bipartite-incidence containers in compressed sorted-adjacency form."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Default cap on the pre-dedup edge buffer used by :func:`project_bipartite`.
PROJECTION_BUFFER_CAP = 2_000_000_000


class GraphError(ValueError):
    """Invalid graph or incidence data."""


def _frozen(a, dtype=np.int64) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=dtype)
    a.flags.writeable = False
    return a


def _csr_from_pairs(n: int, rows: np.ndarray, cols: np.ndarray):
    """Sort ``(row, col)`` pairs and compress them into ``indptr``/``indices``."""
    order = np.lexsort((cols, rows))
    indices = cols[order]
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``indices[indptr[v]:indptr[v + 1]]`` is the strictly increasing neighbour
    list of ``v``. Arrays are read-only; use :func:`build_graph` to construct.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    labels: list | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "indptr", _frozen(self.indptr))
        object.__setattr__(self, "indices", _frozen(self.indices))

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def num_edges(self) -> int:
        return int(self.indices.size // 2)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < nb.size and nb[k] == v)

    def edges(self) -> np.ndarray:
        """Edge array of shape ``(E, 2)`` with ``u < v``, lexicographically sorted."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    def validate(self) -> None:
        """Raise :class:`GraphError` unless the adjacency is symmetric, sorted and loop-free."""
        if self.indptr.shape != (self.n + 1,) or self.indptr[0] != 0:
            raise GraphError("indptr has wrong shape")
        if np.any(np.diff(self.indptr) < 0) or self.indptr[-1] != self.indices.size:
            raise GraphError("indptr is not a valid offset array")
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= self.n):
            raise GraphError("neighbour id out of range")
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        if np.any(rows == self.indices):
            raise GraphError("self-loop present")
        same_row = rows[1:] == rows[:-1]
        if np.any(same_row & (self.indices[1:] <= self.indices[:-1])):
            raise GraphError("adjacency list not strictly increasing")
        fwd = rows * self.n + self.indices
        bwd = np.sort(self.indices * self.n + rows)
        if not np.array_equal(fwd, bwd):
            raise GraphError("adjacency is not symmetric")

    def adjacency_matrix(self) -> np.ndarray:
        """Dense 0/1 matrix; intended for small graphs and tests."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        e = self.edges()
        a[e[:, 0], e[:, 1]] = 1
        a[e[:, 1], e[:, 0]] = 1
        return a


def build_graph(n: int, edges, *, allow_self_loops: bool = False, labels=None) -> Graph:
    """Build a :class:`Graph` from an iterable of unordered vertex pairs.

    Duplicate and reversed pairs collapse to one edge. Self-loops raise
    :class:`GraphError` unless ``allow_self_loops`` is set, in which case
    they are dropped.
    """
    n = int(n)
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    e = np.asarray(edges, dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise GraphError("edges must be a sequence of vertex pairs")
    if e.size and (e.min() < 0 or e.max() >= n):
        bad = e[(e < 0).any(axis=1) | (e >= n).any(axis=1)][0]
        raise GraphError(f"edge {tuple(int(x) for x in bad)} has a vertex id outside 0..{n - 1}")
    loops = e[:, 0] == e[:, 1]
    if loops.any():
        if not allow_self_loops:
            raise GraphError(f"self-loop at vertex {int(e[loops][0, 0])}")
        e = e[~loops]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    code = np.unique(lo * n + hi)
    lo, hi = code // n, code % n
    indptr, indices = _csr_from_pairs(n, np.concatenate([lo, hi]), np.concatenate([hi, lo]))
    return Graph(n, indptr, indices, labels)


def induced_subgraph(g: Graph, keep) -> tuple[Graph, np.ndarray]:
    """Subgraph induced by the vertex ids ``keep``, relabelled densely.

    Returns the subgraph and the array mapping new ids to original ids.
    """
    keep = np.unique(np.asarray(keep, dtype=np.int64))
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[keep] = np.arange(keep.size)
    e = g.edges()
    if e.size:
        a, b = new_id[e[:, 0]], new_id[e[:, 1]]
        mask = (a >= 0) & (b >= 0)
        e = np.column_stack([a[mask], b[mask]])
    labels = None if g.labels is None else [g.labels[i] for i in keep]
    return build_graph(keep.size, e, labels=labels), keep


@dataclass(frozen=True, eq=False)
class BipartiteIncidence:
    """Vertex-to-attribute incidence: vertex ``i`` owns the sorted attribute set ``D_i``.

    Attributes live in ``0..m-1``. ``indices[indptr[i]:indptr[i + 1]]`` is ``D_i``.
    """

    n: int
    m: int
    indptr: np.ndarray
    indices: np.ndarray
    vertex_labels: list | None = field(default=None, compare=False)
    attribute_labels: list | None = field(default=None, compare=False)
    clamped: int = 0

    def __post_init__(self):
        object.__setattr__(self, "indptr", _frozen(self.indptr))
        object.__setattr__(self, "indices", _frozen(self.indices))

    @property
    def set_sizes(self) -> np.ndarray:
        """``a_i = |D_i|``."""
        return np.diff(self.indptr)

    @property
    def attribute_degrees(self) -> np.ndarray:
        """``b_j``, the number of vertices owning attribute ``j``."""
        return np.bincount(self.indices, minlength=self.m)

    @property
    def total_links(self) -> int:
        return int(self.indices.size)

    def attributes(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def validate(self) -> None:
        if self.indptr.shape != (self.n + 1,) or self.indptr[0] != 0:
            raise GraphError("indptr has wrong shape")
        if np.any(np.diff(self.indptr) < 0) or self.indptr[-1] != self.indices.size:
            raise GraphError("indptr is not a valid offset array")
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= self.m):
            raise GraphError("attribute id out of range")
        rows = np.repeat(np.arange(self.n), self.set_sizes)
        if np.any((rows[1:] == rows[:-1]) & (self.indices[1:] <= self.indices[:-1])):
            raise GraphError("attribute list not strictly increasing")
        if int(self.set_sizes.sum()) != int(self.attribute_degrees.sum()):
            raise GraphError("marginal sums disagree")


def build_incidence(n: int, m: int, pairs, **kwargs) -> BipartiteIncidence:
    """Incidence from ``(vertex, attribute)`` pairs; duplicates collapse."""
    p = np.asarray(pairs, dtype=np.int64)
    if p.size == 0:
        p = p.reshape(0, 2)
    if p.ndim != 2 or p.shape[1] != 2:
        raise GraphError("pairs must be (vertex, attribute) tuples")
    if p.size and (p[:, 0].min() < 0 or p[:, 0].max() >= n):
        raise GraphError("vertex id out of range")
    if p.size and (p[:, 1].min() < 0 or p[:, 1].max() >= m):
        raise GraphError("attribute id out of range")
    code = np.unique(p[:, 0] * max(m, 1) + p[:, 1])
    rows, cols = code // max(m, 1), code % max(m, 1)
    indptr, indices = _csr_from_pairs(n, rows, cols)
    return BipartiteIncidence(n, m, indptr, indices, **kwargs)


def incidence_from_sets(sets, m: int, **kwargs) -> BipartiteIncidence:
    """Incidence from a list of per-vertex attribute collections."""
    sets = [np.unique(np.asarray(s, dtype=np.int64)) for s in sets]
    n = len(sets)
    sizes = np.array([s.size for s in sets], dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(sizes, out=indptr[1:])
    indices = np.concatenate(sets) if n else np.zeros(0, dtype=np.int64)
    inc = BipartiteIncidence(n, m, indptr, indices, **kwargs)
    if indices.size and (indices.min() < 0 or indices.max() >= m):
        raise GraphError("attribute id out of range")
    return inc


def project_bipartite(inc: BipartiteIncidence, *, buffer_cap: int = PROJECTION_BUFFER_CAP) -> Graph:
    """One-mode projection: ``u ~ v`` iff ``D_u`` and ``D_v`` intersect.

    Every attribute contributes the clique on its owners; the clique edges are
    emitted per attribute from the inverted lists and deduplicated. Raises
    :class:`GraphError` when the pre-dedup buffer ``sum_j b_j (b_j - 1) / 2``
    would exceed ``buffer_cap``.
    """
    n = inc.n
    b = inc.attribute_degrees
    pending = int((b * (b - 1) // 2).sum())
    if pending > buffer_cap:
        j = int(np.argmax(b))
        raise GraphError(
            f"projection would buffer {pending} pair entries (cap {buffer_cap}); "
            f"largest attribute {j} has {int(b[j])} owners"
        )
    owners_order = np.argsort(inc.indices, kind="stable")
    owners = np.repeat(np.arange(n, dtype=np.int64), inc.set_sizes)[owners_order]
    starts = np.zeros(inc.m + 1, dtype=np.int64)
    np.cumsum(b, out=starts[1:])

    codes = []
    # Attributes with equal owner count are handled together as a 2-D block.
    for size in np.unique(b[b >= 2]):
        js = np.flatnonzero(b == size)
        block = owners[starts[js][:, None] + np.arange(size)]
        iu, ju = np.triu_indices(size, 1)
        lo, hi = block[:, iu].ravel(), block[:, ju].ravel()
        codes.append(np.unique(np.minimum(lo, hi) * n + np.maximum(lo, hi)))
    if codes:
        code = np.unique(np.concatenate(codes))
    else:
        code = np.zeros(0, dtype=np.int64)
    lo, hi = code // max(n, 1), code % max(n, 1)
    indptr, indices = _csr_from_pairs(n, np.concatenate([lo, hi]), np.concatenate([hi, lo]))
    return Graph(n, indptr, indices, inc.vertex_labels)


def common_neighbors(g: Graph, u: int, v: int) -> int:
    """Number of common neighbours ``|adj(u) & adj(v)|`` via sorted-list merge."""
    if u == v:
        raise GraphError("common_neighbors needs two distinct vertices")
    a, b = g.neighbors(u), g.neighbors(v)
    i = j = count = 0
    while i < a.size and j < b.size:
        x, y = a[i], b[j]
        if x == y:
            count += 1
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return count
