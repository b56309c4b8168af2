"""Inhomogeneous random intersection graphs and the marginal-preserving surrogate."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .graph import BipartiteIncidence
from .pmf import DiscretePMF
from .rng import Stream, substream

# rows whose largest cell probability is below this use geometric skipping
SKIP_THRESHOLD = 0.1
_CHUNK = 1024


def _row_cells(g: np.random.Generator, w: float, col: np.ndarray, col_max: float,
               denom: float, fast: bool) -> np.ndarray:
    m = col.size
    p_max = min(1.0, w * col_max / denom)
    if fast and p_max < SKIP_THRESHOLD:
        # thinning: candidate cells at rate p_max, each kept with p_j / p_max
        picks = []
        pos = -1
        batch = max(8, int(1.5 * m * p_max) + 8)
        while True:
            pos = pos + np.cumsum(g.geometric(p_max, size=batch))
            hit = pos[pos < m]
            picks.append(hit)
            if hit.size < batch:
                break
            pos = pos[-1]
        cand = np.concatenate(picks)
        keep = g.random(cand.size) * p_max < np.minimum(1.0, w * col[cand] / denom)
        return cand[keep]
    p = np.minimum(1.0, w * col / denom)
    return np.flatnonzero(g.random(m) < p)


def _sample_cells(row_w: np.ndarray, col_w: np.ndarray, denom: float, seed: int,
                  stream: Stream, fast: bool, threads: int) -> BipartiteIncidence:
    """Include cell ``(i, j)`` independently with probability ``min(1, row_w[i] col_w[j] / denom)``.

    Row ``i`` uses its own substream, so the result is independent of the
    number of workers.
    """
    n, m = row_w.size, col_w.size
    rows: list[np.ndarray | None] = [None] * n
    col_max = float(col_w.max()) if m else 0.0

    def fill(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            w = float(row_w[i])
            if w == 0.0 or col_max == 0.0:
                rows[i] = np.zeros(0, dtype=np.int64)
                continue
            rows[i] = _row_cells(substream(seed, stream, i), w, col_w, col_max, denom, fast)

    chunks = [(lo, min(lo + _CHUNK, n)) for lo in range(0, n, _CHUNK)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda c: fill(*c), chunks))
    else:
        for c in chunks:
            fill(*c)

    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum([r.size for r in rows], out=indptr[1:])
    indices = np.concatenate(rows).astype(np.int64) if n else np.zeros(0, dtype=np.int64)
    return BipartiteIncidence(n, m, indptr, indices, clamped=clamped_cells(row_w, col_w, denom))


def clamped_cells(row_w, col_w, denom: float) -> int:
    """Number of cells with ``row_w[i] col_w[j] / denom > 1``."""
    vals, counts = np.unique(np.asarray(row_w, dtype=np.float64), return_counts=True)
    col_w = np.asarray(col_w, dtype=np.float64)
    return int(sum(c * np.count_nonzero(v * col_w / denom > 1.0) for v, c in zip(vals, counts)))


def sample_inhomogeneous(n: int, m: int, P1: DiscretePMF, P2: DiscretePMF, seed: int, *,
                         fast: bool = True, threads: int = 1) -> BipartiteIncidence:
    """Sample G1(n, m, P1, P2): weights ``A_i ~ P1``, ``B_j ~ P2``, then
    attribute ``j`` joins ``D_i`` with probability ``min(1, A_i B_j / sqrt(n m))``.

    The clamped-cell count is reported in ``clamped``. The weights drawn for
    a seed can be recovered with :func:`inhomogeneous_weights`.
    """
    A, B = inhomogeneous_weights(n, m, P1, P2, seed)
    return _sample_cells(A, B, math.sqrt(n * m), seed, Stream.INHOM_ROW, fast, threads)


def inhomogeneous_weights(n: int, m: int, P1: DiscretePMF, P2: DiscretePMF, seed: int):
    """The vertex and attribute weights used by :func:`sample_inhomogeneous` for ``seed``."""
    A = np.asarray(P1.sample(substream(seed, Stream.WEIGHT_A), n), dtype=np.float64)
    B = np.asarray(P2.sample(substream(seed, Stream.WEIGHT_B), m), dtype=np.float64)
    return A, B


def memoryless_inhomogeneous(a, b, seed: int, *, fast: bool = True,
                             threads: int = 1) -> BipartiteIncidence:
    """Vertex ``i`` takes attribute ``j`` with probability ``min(1, a_i b_j / M)``.

    ``a`` and ``b`` are observed vertex and attribute degrees of a bipartite
    graph with ``M = sum(a) = sum(b)`` links.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    M = int(a.sum())
    if M != int(b.sum()):
        raise ValueError(f"marginal sums differ: sum(a)={M}, sum(b)={int(b.sum())}")
    if M <= 0:
        raise ValueError("marginals must have a positive total")
    if a.min() < 0 or b.min() < 0:
        raise ValueError("marginals must be nonnegative")
    return _sample_cells(a.astype(np.float64), b.astype(np.float64), float(M), seed,
                         Stream.MEMORYLESS_ROW, fast, threads)
