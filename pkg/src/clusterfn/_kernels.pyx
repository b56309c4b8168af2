# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for the common-neighbour pair histogram."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef void _accumulate(const int64_t[::1] indptr, const int64_t[::1] indices,
                      int64_t lo, int64_t hi,
                      int64_t[::1] count, int64_t[::1] mark, int64_t[::1] touched,
                      int64_t[::1] total, int64_t[::1] adjacent) noexcept nogil:
    cdef int64_t u, w, v, k, t, r, ntouched
    for u in range(lo, hi):
        for k in range(indptr[u], indptr[u + 1]):
            mark[indices[k]] = u
        ntouched = 0
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            # neighbour lists are sorted: walk from the top down to u
            t = indptr[w + 1] - 1
            while t >= indptr[w]:
                v = indices[t]
                if v <= u:
                    break
                if count[v] == 0:
                    touched[ntouched] = v
                    ntouched += 1
                count[v] += 1
                t -= 1
        for k in range(ntouched):
            v = touched[k]
            r = count[v]
            total[r] += 1
            if mark[v] == u:
                adjacent[r] += 1
            count[v] = 0


def pair_histogram_range(indptr, indices, Py_ssize_t n, int64_t lo, int64_t hi,
                         Py_ssize_t max_r):
    """Histogram of ``r >= 1`` over pairs ``u < v`` with ``lo <= u < hi``.

    Returns ``(total, adjacent)`` int64 arrays of length ``max_r + 1``; index
    ``r`` counts pairs with exactly ``r`` common neighbours. Releases the GIL.
    """
    cdef const int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int64_t[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef int64_t[::1] count = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] mark = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] touched = np.zeros(n, dtype=np.int64)
    total_arr = np.zeros(max_r + 1, dtype=np.int64)
    adjacent_arr = np.zeros(max_r + 1, dtype=np.int64)
    cdef int64_t[::1] total = total_arr
    cdef int64_t[::1] adjacent = adjacent_arr
    with nogil:
        _accumulate(ip, ix, lo, hi, count, mark, touched, total, adjacent)
    return total_arr, adjacent_arr
