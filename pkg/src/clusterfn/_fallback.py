"""Vectorised stand-in for the compiled kernels, used when the extension is not built."""

from __future__ import annotations

import numpy as np
from scipy import sparse

# upper bound on stored entries of one row-block product
_BLOCK_ENTRIES = 20_000_000


def pair_histogram_range(indptr, indices, n, lo, hi, max_r):
    """Same contract as the compiled ``pair_histogram_range``.

    Rows ``lo..hi`` of ``A @ A`` are formed block by block with sparse
    products; entries above the diagonal give the common-neighbour counts.
    """
    total = np.zeros(max_r + 1, dtype=np.int64)
    adjacent = np.zeros(max_r + 1, dtype=np.int64)
    if hi <= lo:
        return total, adjacent
    data = np.ones(indices.size, dtype=np.int64)
    a = sparse.csr_matrix((data, indices, indptr), shape=(n, n))
    deg = np.diff(indptr)
    # cost of row u is sum of neighbour degrees
    rows = np.repeat(np.arange(n), deg)
    cost = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, weights=deg[indices], minlength=n).astype(np.int64) + 1,
              out=cost[1:])
    start = lo
    while start < hi:
        stop = int(np.searchsorted(cost, cost[start] + _BLOCK_ENTRIES, side="right")) - 1
        stop = min(max(stop, start + 1), hi)
        block = a[start:stop]
        prod = block @ a
        both = prod.multiply(block).tocoo()
        prod = prod.tocoo()
        upper = prod.col > prod.row + start
        total += np.bincount(prod.data[upper], minlength=max_r + 1)[: max_r + 1]
        upper = both.col > both.row + start
        adjacent += np.bincount(both.data[upper], minlength=max_r + 1)[: max_r + 1]
        start = stop
    return total, adjacent
