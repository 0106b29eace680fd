"""Pure-Python implementation of the permutation-action kernels.

A permutation module is described by ``uplevels`` (one entry per induction
step, outermost first; entry ``L`` means induction into the rank-``L``
symmetric group) over the regular module of the rank-``n`` group.  Basis
vectors are mixed-radix indices ``(i_1, ..., i_k, rank)`` where ``i_r`` picks the
coset representative ``g_{i_r}`` and ``rank`` is the lexicographic rank of a
permutation of ``range(n)``.

``g_i`` in rank ``L`` sends ``L-1`` to ``i`` and shifts ``i..L-2`` up by one.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np


def perm_rank(p) -> int:
    """Lexicographic rank of a permutation given as a sequence of images."""
    n = len(p)
    rank = 0
    for k in range(n):
        smaller = 0
        for r in range(k + 1, n):
            if p[r] < p[k]:
                smaller += 1
        rank += smaller * factorial(n - 1 - k)
    return rank


@lru_cache(maxsize=None)
def perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(factorial(n), n)


def extend(sigma, size: int) -> tuple:
    sigma = tuple(sigma)
    if len(sigma) > size:
        if any(sigma[k] != k for k in range(size, len(sigma))):
            raise ValueError("permutation does not lie in the subgroup")
        return sigma[:size]
    return sigma + tuple(range(len(sigma), size))


def coset_factor(sigma, i: int, size: int):
    """Write ``sigma * g_i = g_j * h`` in rank ``size``; return ``(j, h)``.

    ``h`` fixes ``size - 1`` and is returned as a permutation of ``range(size - 1)``.
    """
    sigma = extend(sigma, size)
    j = sigma[i]
    h = []
    for k in range(size - 1):
        gk = k if k < i else k + 1
        y = sigma[gk]
        h.append(y if y < j else y - 1)
    return j, tuple(h)


@lru_cache(maxsize=4096)
def _act(uplevels: tuple, n: int, sigma: tuple) -> np.ndarray:
    if not uplevels:
        s = np.array(extend(sigma, n), dtype=np.int64)
        table = perm_table(n)
        if n == 0:
            return np.zeros(1, dtype=np.int64)
        composed = s[table]
        weights = np.array([factorial(n - 1 - k) for k in range(n)], dtype=np.int64)
        # Lehmer code of each row
        less = composed[:, None, :] < composed[:, :, None]
        upper = np.triu(np.ones((n, n), dtype=bool), 1)
        codes = (less & upper[None, :, :]).sum(axis=2)
        return codes @ weights
    size = uplevels[0]
    inner = uplevels[1:]
    sub = []
    for i in range(size):
        j, h = coset_factor(sigma, i, size)
        sub.append(j * inner_dim(inner, n) + _act(inner, n, h))
    return np.concatenate(sub)


def inner_dim(uplevels: tuple, n: int) -> int:
    d = factorial(n)
    for L in uplevels:
        d *= L
    return d


def act(uplevels, n: int, sigma) -> np.ndarray:
    """Image index of every basis vector under the action of ``sigma``."""
    return _act(tuple(uplevels), n, tuple(sigma))
