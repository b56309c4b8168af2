"""Brute-force reference computations, independent of the library's code paths."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def dense_adjacency(n, edges):
    a = np.zeros((n, n), dtype=np.int64)
    for u, v in edges:
        if u != v:
            a[u, v] = a[v, u] = 1
    return a


def histogram_from_matrix(a):
    """{r: (total, adjacent)} over unordered pairs from a dense 0/1 matrix."""
    cn = a @ a
    out = {}
    for i, j in itertools.combinations(range(a.shape[0]), 2):
        r = int(cn[i, j])
        t, ad = out.get(r, (0, 0))
        out[r] = (t + 1, ad + int(a[i, j]))
    return out


def batched_histograms(A):
    """Histograms for a stack ``A`` of shape (B, n, n); returns (total, adjacent) of shape (B, n-1)."""
    B, n, _ = A.shape
    cn = np.einsum("bij,bjk->bik", A, A)
    iu, ju = np.triu_indices(n, 1)
    r = cn[:, iu, ju]
    adj = A[:, iu, ju]
    rows = np.repeat(np.arange(B), iu.size)
    total = np.zeros((B, max(n - 1, 1)), dtype=np.int64)
    adjacent = np.zeros_like(total)
    np.add.at(total, (rows, r.ravel()), 1)
    np.add.at(adjacent, (rows, r.ravel()), adj.ravel())
    return total, adjacent


def batched_ordered_triple_counts(A):
    """Numerator and denominator of P(v1~v2 | v1~v3, v2~v3) over ordered distinct triples."""
    B, n, _ = A.shape
    distinct = np.ones((n, n, n), dtype=bool)
    for a, b, c in itertools.product(range(n), repeat=3):
        if len({a, b, c}) < 3:
            distinct[a, b, c] = False
    # axes: a, b, c -> A[a,c] A[b,c] (A[a,b])
    wedge = A[:, :, None, :] * A[:, None, :, :]
    wedge = wedge * distinct[None]
    den = wedge.sum(axis=(1, 2, 3))
    num = (wedge * A[:, :, :, None]).sum(axis=(1, 2, 3))
    return num, den


def ordered_triple_clustering(n, edges):
    a = dense_adjacency(n, edges)
    num = den = 0
    for x, y, z in itertools.permutations(range(n), 3):
        if a[x, z] and a[y, z]:
            den += 1
            num += a[x, y]
    return None if den == 0 else num / den


def hypergeometric_intersection(d1, d2, s, m):
    """Exact P(|D1 & D2| = s) and P(|D1 & D2| >= s) for uniform subsets of sizes d1, d2."""
    def eq(t):
        return Fraction(math.comb(d1, t) * math.comb(m - d1, d2 - t), math.comb(m, d2))

    return eq(s), sum((eq(t) for t in range(s, min(d1, d2) + 1)), Fraction(0))


def poisson_pmf_direct(k, lam):
    return math.exp(-lam) * lam**k / math.factorial(k)
