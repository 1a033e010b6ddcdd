"""Compiled inner loops.

Both kernels evaluate ``sum_{k,l} a[k, l] * b[p[k], p[l]]`` for symmetric
``a`` and ``b`` in one fixed order: rows ascending, diagonal term first, then
the strict upper triangle through four interleaved accumulators. The order
never depends on thread count, so every caller gets bitwise identical sums.
"""

import numba
import numpy as np


@numba.njit(nogil=True, cache=True)
def permuted_inner(a, b, perm):
    n = a.shape[0]
    total = 0.0
    for k in range(n):
        pk = perm[k]
        s0 = 0.0
        s1 = 0.0
        s2 = 0.0
        s3 = 0.0
        l = k + 1
        while l + 3 < n:
            s0 += a[k, l] * b[pk, perm[l]]
            s1 += a[k, l + 1] * b[pk, perm[l + 1]]
            s2 += a[k, l + 2] * b[pk, perm[l + 2]]
            s3 += a[k, l + 3] * b[pk, perm[l + 3]]
            l += 4
        while l < n:
            s0 += a[k, l] * b[pk, perm[l]]
            l += 1
        total += a[k, k] * b[pk, pk] + 2.0 * ((s0 + s1) + (s2 + s3))
    return total


@numba.njit(nogil=True, cache=True)
def permuted_inner_batch(a, b, perms, out):
    for r in range(perms.shape[0]):
        out[r] = permuted_inner(a, b, perms[r])


def identity(n):
    return np.arange(n, dtype=np.int64)
