# cython: language_level=3, boundscheck=True, wraparound=False, cdivision=True
"""Compiled permutation-action kernel; same contract as ``_kernels_py.act``.

Recurses over the coset digits exactly like the fallback.  The base-level
row for an inner permutation ``h`` (the rank of ``h . p`` for every ``p``) is
computed once per distinct ``h`` and then copied.
"""
import numpy as np
cimport numpy as cnp

from math import factorial
from itertools import permutations

cnp.import_array()


cdef long _rank(long[:] p, long n, long[:] fact) nogil:
    cdef long q, y, smaller, rank = 0
    for q in range(n):
        smaller = 0
        for y in range(q + 1, n):
            if p[y] < p[q]:
                smaller += 1
        rank += smaller * fact[n - 1 - q]
    return rank


cdef class _Walker:
    cdef long k, n, nfact
    cdef long[:] ups
    cdef long[:] inner
    cdef long[:] fact
    cdef long[:, :] scratch
    cdef long[:, :] table
    cdef long[:, :] rows
    cdef char[:] ready
    cdef long[:] tmp
    cdef long[:] res

    def __init__(self, long[:] ups, long[:] inner, long[:] fact, long[:, :] table, long[:, :] scratch, long[:] res):
        self.k = ups.shape[0] - 1
        self.n = fact.shape[0] - 1
        self.nfact = fact[self.n]
        self.ups = ups
        self.inner = inner
        self.fact = fact
        self.scratch = scratch
        self.table = table
        self.rows = np.zeros((self.nfact, self.nfact), dtype=np.int64)
        self.ready = np.zeros(self.nfact, dtype=np.int8)
        self.tmp = np.zeros(self.n + 1, dtype=np.int64)
        self.res = res

    cdef void _base_row(self, long hr, long[:] h):
        cdef long r, q
        for r in range(self.nfact):
            for q in range(self.n):
                self.tmp[q] = h[self.table[r, q]]
            self.rows[hr, r] = _rank(self.tmp, self.n, self.fact)
        self.ready[hr] = 1

    cdef void walk(self, long depth, long offset, long acc):
        cdef long L, i, j, q, gk, y, hr, r
        cdef long[:] cur = self.scratch[depth]
        cdef long[:] nxt
        if depth == self.k:
            hr = _rank(cur, self.n, self.fact)
            if not self.ready[hr]:
                self._base_row(hr, cur)
            for r in range(self.nfact):
                self.res[offset + r] = acc + self.rows[hr, r]
            return
        nxt = self.scratch[depth + 1]
        L = self.ups[depth]
        for i in range(L):
            j = cur[i]
            for q in range(L - 1):
                gk = q if q < i else q + 1
                y = cur[gk]
                nxt[q] = y if y < j else y - 1
            for q in range(L - 1, nxt.shape[0]):
                nxt[q] = q
            self.walk(depth + 1, offset + i * self.inner[depth + 1], acc + j * self.inner[depth + 1])


def act(uplevels, int n, sigma):
    ups = tuple(uplevels)
    size = ups[0] if ups else n
    sigma = tuple(sigma)
    if len(sigma) > size:
        if any(sigma[q] != q for q in range(size, len(sigma))):
            raise ValueError("permutation does not lie in the subgroup")
        sigma = sigma[:size]
    width = max([n, len(sigma)] + list(ups)) + 1
    dim = factorial(n)
    for L in ups:
        dim *= L
    out = np.empty(dim, dtype=np.int64)
    inner = [factorial(n)]
    for L in reversed(ups):
        inner.append(inner[-1] * L)
    scratch = np.zeros((len(ups) + 1, width), dtype=np.int64)
    scratch[0, :] = list(sigma) + list(range(len(sigma), width))
    walker = _Walker(
        np.asarray(list(ups) + [0], dtype=np.int64),
        np.asarray(inner[::-1], dtype=np.int64),
        np.asarray([factorial(q) for q in range(n + 1)], dtype=np.int64),
        np.asarray(list(permutations(range(n))), dtype=np.int64).reshape(factorial(n), n),
        scratch,
        out,
    )
    walker.walk(0, 0, 0)
    return out
