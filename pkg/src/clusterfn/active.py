"""Active random intersection graphs and their memoryless surrogates."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .graph import BipartiteIncidence
from .pmf import DiscretePMF
from .rng import Stream, substream

_CHUNK = 4096


def _uniform_sets(sizes: np.ndarray, m: int, seed: int, stream: Stream,
                  threads: int = 1) -> BipartiteIncidence:
    n = sizes.size
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(sizes, out=indptr[1:])
    indices = np.empty(int(indptr[-1]), dtype=np.int64)

    def fill(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            x = int(sizes[i])
            if x:
                g = substream(seed, stream, i)
                indices[indptr[i]:indptr[i + 1]] = np.sort(g.choice(m, x, replace=False))

    chunks = [(lo, min(lo + _CHUNK, n)) for lo in range(0, n, _CHUNK)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda c: fill(*c), chunks))
    else:
        for c in chunks:
            fill(*c)
    return BipartiteIncidence(n, m, indptr, indices)


def sample_active(n: int, m: int, P: DiscretePMF, seed: int, *, threads: int = 1) -> BipartiteIncidence:
    """Sample the incidence of the active graph G1(n, m, P).

    Set sizes ``X_i ~ P`` come from one size stream; vertex ``i`` then draws a
    uniform ``X_i``-subset of ``0..m-1`` from its own substream.
    """
    if not P.is_integer:
        raise ValueError("set-size law must be integer valued")
    if max(P.values) > m:
        raise ValueError(f"set size {max(P.values)} exceeds the ground set size {m}")
    sizes = P.sample(substream(seed, Stream.ACTIVE_SIZE), n).astype(np.int64)
    return _uniform_sets(sizes, m, seed, Stream.ACTIVE_SET, threads)


def memoryless_active(sizes, m_tilde: int, seed: int, *, threads: int = 1) -> BipartiteIncidence:
    """Vertex ``i`` receives a uniform ``sizes[i]``-subset of ``0..m_tilde-1``."""
    sizes = np.asarray(sizes, dtype=np.int64)
    if sizes.size and sizes.min() < 0:
        raise ValueError("set sizes must be nonnegative")
    if sizes.size and sizes.max() > m_tilde:
        raise ValueError(f"set size {int(sizes.max())} exceeds the ground set size {m_tilde}")
    return _uniform_sets(sizes, int(m_tilde), seed, Stream.MEMORYLESS_SET, threads)


def _miss_matrix(vals: np.ndarray, m: int) -> np.ndarray:
    """``P(disjoint)`` for uniform subsets with sizes from ``vals`` (all pairs).

    Uses ``C(m-x, y) / C(m, y) = prod_{k < min(x,y)} (1 - max(x,y) / (m - k))``
    summed in log space, which keeps full relative accuracy for large ``m``.
    """
    vals = np.asarray(vals, dtype=np.int64)
    top = int(vals.max()) if vals.size else 0
    k = np.arange(top, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.log1p(-vals[:, None] / (m - k[None, :]))
    csum = np.zeros((vals.size, top + 1))
    np.cumsum(terms, axis=1, out=csum[:, 1:])
    hi_idx = np.where(vals[:, None] >= vals[None, :], np.arange(vals.size)[:, None],
                      np.arange(vals.size)[None, :])
    lo_val = np.minimum(vals[:, None], vals[None, :])
    with np.errstate(invalid="ignore"):
        miss = np.exp(csum[hi_idx, lo_val])
    forced = vals[:, None] + vals[None, :] > m
    miss[forced] = 0.0
    return miss


def intersection_probability(x, y, m: int):
    """P(two independent uniform subsets of sizes x and y of an m-set intersect)."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
    vals, inv = np.unique(np.concatenate([x.ravel(), y.ravel()]), return_inverse=True)
    miss = _miss_matrix(vals, m)
    out = 1.0 - miss[inv[: x.size], inv[x.size:]]
    out = out.reshape(x.shape)
    return float(out) if out.ndim == 0 else out


def expected_mean_degree(sizes, m_tilde: int) -> float:
    """Expected mean degree of the memoryless active graph with ground set ``m_tilde``.

    Sizes are grouped by value, so the cost is quadratic in the number of
    distinct sizes rather than in ``n``.
    """
    sizes = np.asarray(sizes, dtype=np.int64)
    n = sizes.size
    if n < 2:
        return 0.0
    if sizes.max() > m_tilde:
        raise ValueError("a set size exceeds the ground set size")
    vals, counts = np.unique(sizes, return_counts=True)
    q = 1.0 - _miss_matrix(vals, m_tilde)
    # ordered pairs of distinct vertices with sizes (a, b): c_a (c_b - [a == b])
    weights = counts[:, None] * (counts[None, :] - np.eye(vals.size, dtype=np.int64))
    return math.fsum((weights * q).ravel().tolist()) / n


def adjust_ground_set(sizes, target_mean_degree: float) -> int:
    """Ground-set size whose expected mean degree is closest to the target.

    Searches ``m >= max(sizes)`` (and ``m >= 1``) by exponential then binary
    search on the non-increasing map ``m -> expected_mean_degree(sizes, m)``;
    ties go to the smaller ``m``.
    """
    sizes = np.asarray(sizes, dtype=np.int64)
    lo = max(1, int(sizes.max()) if sizes.size else 0)
    target = float(target_mean_degree)
    top = expected_mean_degree(sizes, lo)
    if target > top:
        raise ValueError(f"target mean degree {target} exceeds the maximum {top} reached at m={lo}")
    if np.count_nonzero(sizes) < 2:
        if target != 0:
            raise ValueError("fewer than two nonempty sets: the expected degree is always 0")
        return lo
    if target <= 0:
        raise ValueError("a positive target is required when at least two sets are nonempty")

    def f(mm):
        return expected_mean_degree(sizes, mm)

    hi = lo
    while f(hi) > target:
        hi *= 2
    # smallest m in [lo, hi] with f(m) <= target
    left, right = lo, hi
    while left < right:
        mid = (left + right) // 2
        if f(mid) <= target:
            right = mid
        else:
            left = mid + 1
    best = left
    if best > lo and abs(f(best - 1) - target) <= abs(f(best) - target):
        best -= 1
    return best
