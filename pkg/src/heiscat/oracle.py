"""Semantic model: words act on regular modules of symmetric groups.

``u`` is induction from rank ``m`` to ``m+1``, ``d`` is restriction; a word is
read right to left starting from the regular module of rank ``n``.  Every
generating morphism becomes an explicit integer matrix on these permutation
modules, and a diagram is evaluated as the product of its slice matrices.
All arithmetic is exact (integer sparse matrices, overflow-checked).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from . import kernels
from .words import UP, format_word

# (source, target) of every generator the evaluator understands
GENERATORS = {
    "s": ("uu", "uu"),
    "c": ("", "du"),
    "d": ("ud", ""),
    "c'": ("", "ud"),
    "d'": ("du", ""),
    "t": ("ud", "du"),
    "t'": ("du", "ud"),
    "x": ("u", "u"),
    "x'": ("d", "d"),
    "s'": ("dd", "dd"),
}
PRIMITIVE = ("s", "c", "d", "c'", "d'")

# Derived generators as slice words (bottom to top); a slice is (left, gen, right).
DEFINITIONS = {
    "t": (("", "c", "ud"), ("d", "s", "d"), ("du", "d", "")),
    "t'": (("du", "c'", ""), ("d", "s", "d"), ("", "d'", "ud")),
    "x": (("u", "c'", ""), ("", "s", "d"), ("u", "d", "")),
    "x'": (("", "c", "d"), ("d", "x", "d"), ("d", "d", "")),
    "s'": (("", "c", "dd"), ("d", "t", "d"), ("dd", "d", "")),
}

_MAX_ENTRY = 1 << 52


class OracleError(Exception):
    pass


@dataclass(frozen=True)
class LevelSpace:
    """The value of the functor ``word`` on the regular module of rank ``level``."""

    word: str
    level: int
    uplevels: tuple = ()
    top: int = 0
    dim: int = 0

    def labels(self) -> Iterable[tuple]:
        """Basis labels ``(coset indices..., base permutation)`` in index order."""
        if self.dim == 0:
            return
        from itertools import permutations, product

        ranges = [range(L) for L in self.uplevels]
        for digits in product(*ranges):
            for p in permutations(range(self.level)):
                yield digits + (p,)


@lru_cache(maxsize=None)
def eval_object(word: str, n: int) -> LevelSpace:
    """Build the level space of ``word`` over the rank-``n`` regular module."""
    level = n
    ups = []
    for ch in reversed(word):
        if ch == UP:
            level += 1
            ups.append(level)
        else:
            if level == 0:
                return LevelSpace(word, n, (), -1, 0)
            level -= 1
    ups.reverse()
    return LevelSpace(word, n, tuple(ups), level, kernels.inner_dim(tuple(ups), n))


def predicted_dim(word: str, n: int) -> int:
    """Dimension by counting: induction to rank ``m+1`` multiplies by ``m+1``."""
    level, dim = n, factorial(n)
    for ch in reversed(word):
        if ch == UP:
            level += 1
            dim *= level
        elif level == 0:
            return 0
        else:
            level -= 1
    return dim


def _perm_from_cosets(i: int, j: int, size: int) -> tuple:
    """The permutation ``g_i^{(size)} g_j^{(size-1)}`` as images of ``range(size)``."""
    gj = [k if k < j else k + 1 for k in range(size - 2)] + [j, size - 1]
    gi = [k if k < i else k + 1 for k in range(size - 1)] + [i]
    return tuple(gi[gj[k]] for k in range(size))


def _matrix(rows, cols, vals, shape) -> sp.csr_matrix:
    return sp.csr_matrix((np.asarray(vals, dtype=np.int64), (np.asarray(rows), np.asarray(cols))), shape=shape)


def _component(gen: str, inner: LevelSpace, src: LevelSpace, tgt: LevelSpace) -> sp.csr_matrix:
    """Matrix of a primitive generator on ``gen(inner)``."""
    shape = (tgt.dim, src.dim)
    if src.dim == 0 or tgt.dim == 0:
        return sp.csr_matrix(shape, dtype=np.int64)
    m, D, ups, n = inner.top, inner.dim, inner.uplevels, inner.level
    base = np.arange(D, dtype=np.int64)
    if gen == "c":  # unit of induction/restriction: v -> 1 (x) v
        return _matrix(m * D + base, base, np.ones(D), shape)
    if gen == "d'":  # projection onto the identity coset
        return _matrix(base, m * D + base, np.ones(D), shape)
    if gen == "d":  # action counit: g_i (x) v -> g_i v
        rows, cols = [], []
        for i in range(m):
            sigma = [k if k < i else k + 1 for k in range(m - 1)] + [i]
            rows.append(kernels.act(ups, n, sigma))
            cols.append(i * D + base)
        return _matrix(np.concatenate(rows), np.concatenate(cols), np.ones(m * D), shape)
    if gen == "c'":  # coevaluation: v -> sum_i g_i (x) g_i^{-1} v
        rows, cols = [], []
        for i in range(m):
            g = [k if k < i else k + 1 for k in range(m - 1)] + [i]
            cols.append(kernels.act(ups, n, g))
            rows.append(i * D + base)
        return _matrix(np.concatenate(rows), np.concatenate(cols), np.ones(m * D), shape)
    if gen == "s":  # right multiplication by the transposition of the two new points
        size = m + 2
        rows, cols = [], []
        for i in range(size):
            for j in range(size - 1):
                pi = list(_perm_from_cosets(i, j, size))
                pi[m], pi[m + 1] = pi[m + 1], pi[m]
                i2, (j2, h) = _split(pi, size)
                rows.append((i2 * (size - 1) + j2) * D + kernels.act(ups, n, h))
                cols.append((i * (size - 1) + j) * D + base)
        return _matrix(np.concatenate(rows), np.concatenate(cols), np.ones(len(rows) * D), shape)
    raise OracleError(f"no component formula for {gen!r}")


def _split(pi, size):
    """Factor ``pi = g_i g_j h`` (ranks ``size``, ``size-1``); return ``i, (j, h)``."""
    i = pi[size - 1]
    h1 = [(y if y < i else y - 1) for y in (pi[k] for k in range(size - 1))]
    j = h1[size - 2]
    h = tuple((y if y < j else y - 1) for y in h1[: size - 2])
    return i, (j, h)


def _left_multiplier(left: str, level: int) -> int:
    mult = 1
    for ch in reversed(left):
        if ch == UP:
            level += 1
            mult *= level
        elif level == 0:
            return 0
        else:
            level -= 1
    return mult


def expand(slices: Sequence[tuple]) -> list:
    """Rewrite derived generators into primitive slices."""
    out = []
    for left, gen, right in slices:
        if gen in DEFINITIONS:
            out.extend(expand([(left + l2, g2, r2 + right) for l2, g2, r2 in DEFINITIONS[gen]]))
        elif gen == "id":
            continue
        elif gen in PRIMITIVE:
            out.append((left, gen, right))
        else:
            raise OracleError(f"unknown generator {gen!r}")
    return out


@lru_cache(maxsize=None)
def slice_matrix(left: str, gen: str, right: str, n: int) -> sp.csr_matrix:
    """Matrix of ``id_left (x) gen (x) id_right`` at base level ``n``."""
    gsrc, gtgt = GENERATORS[gen]
    src = eval_object(left + gsrc + right, n)
    tgt = eval_object(left + gtgt + right, n)
    if gen not in PRIMITIVE:
        mat = eval_slices(left + gsrc + right, [(left, gen, right)], n)
        return mat
    if src.dim == 0 or tgt.dim == 0:
        return sp.csr_matrix((tgt.dim, src.dim), dtype=np.int64)
    inner = eval_object(right, n)
    core = _component(gen, inner, eval_object(gsrc + right, n), eval_object(gtgt + right, n))
    mult = _left_multiplier(left, eval_object(gsrc + right, n).top)
    if mult == 1:
        return core
    return sp.kron(sp.identity(mult, dtype=np.int64, format="csr"), core, format="csr")


def slice_source_target(source: str, slices: Sequence[tuple]) -> str:
    """Check a slice word typechecks from ``source``; return its target."""
    cur = source
    for left, gen, right in slices:
        gsrc, gtgt = GENERATORS[gen] if gen != "id" else ("", "")
        if cur != left + gsrc + right:
            raise OracleError(f"slice {left}|{gen}|{right} does not apply to {format_word(cur)}")
        cur = left + gtgt + right
    return cur


def _check(mat: sp.csr_matrix) -> sp.csr_matrix:
    if mat.nnz and int(abs(mat.data).max()) > _MAX_ENTRY:
        raise OracleError("integer entries exceed the exact range")
    return mat


def eval_slices(source: str, slices: Sequence[tuple], n: int) -> sp.csr_matrix:
    """Matrix of the composite slice word (first slice applied first)."""
    slice_source_target(source, slices)
    mat = sp.identity(eval_object(source, n).dim, dtype=np.int64, format="csr")
    for left, gen, right in expand(slices):
        mat = _check(slice_matrix(left, gen, right, n) @ mat)
    mat.eliminate_zeros()
    return mat


@lru_cache(maxsize=None)
def eval_diagram(diagram, n: int) -> sp.csr_matrix:
    """Matrix of a basis diagram through its slice factorization."""
    from .diagrams import to_slices

    sw = to_slices(diagram)
    return eval_slices(sw.source, sw.slices, n)


def eval_morphism(morphism, n: int) -> sp.csr_matrix:
    src, tgt = eval_object(morphism.source, n), eval_object(morphism.target, n)
    mat = sp.csr_matrix((tgt.dim, src.dim), dtype=np.int64)
    for d, k in morphism.items():
        mat = _check(mat + k * eval_diagram(d, n))
    mat.eliminate_zeros()
    return mat


def matrices_equal(a: sp.csr_matrix, b: sp.csr_matrix) -> bool:
    if a.shape != b.shape:
        return False
    diff = (a - b).tocsr()
    diff.eliminate_zeros()
    return diff.nnz == 0


def morphisms_equal(a, b, max_level: int) -> bool:
    """Agreement of two morphisms (or slice words) on every level ``0..max_level``."""
    def ev(m, n):
        if hasattr(m, "terms"):
            return eval_morphism(m, n)
        return eval_slices(m.source, m.slices, n)

    return all(matrices_equal(ev(a, n), ev(b, n)) for n in range(max_level + 1))


# Each side is a list of (coefficient, slices); an empty list is the zero map.
RELATIONS = [
    ("hecke_square", "uu", [(1, [("", "s", ""), ("", "s", "")])], [(1, [])]),
    ("hecke_braid", "uuu",
     [(1, [("", "s", "u"), ("u", "s", ""), ("", "s", "u")])],
     [(1, [("u", "s", ""), ("", "s", "u"), ("u", "s", "")])]),
    ("right_zigzag_up", "u", [(1, [("u", "c", ""), ("", "d", "u")])], [(1, [])]),
    ("right_zigzag_down", "d", [(1, [("", "c", "d"), ("d", "d", "")])], [(1, [])]),
    ("left_zigzag_up", "u", [(1, [("", "c'", "u"), ("u", "d'", "")])], [(1, [])]),
    ("left_zigzag_down", "d", [(1, [("d", "c'", ""), ("", "d'", "d")])], [(1, [])]),
    ("t'.t = id", "ud", [(1, [("", "t", ""), ("", "t'", "")])], [(1, [])]),
    ("t.t' = id - c.d'", "du", [(1, [("", "t'", ""), ("", "t", "")])],
     [(1, []), (-1, [("", "d'", ""), ("", "c", "")])]),
    ("left_curl = 0", "u", [(1, [("", "c", "u"), ("d", "s", ""), ("", "d'", "u")])], []),
    ("counterclockwise_bubble = id", "", [(1, [("", "c", ""), ("", "d'", "")])], [(1, [])]),
    ("d'.t = 0", "ud", [(1, [("", "t", ""), ("", "d'", "")])], []),
    ("t'.c = 0", "", [(1, [("", "c", ""), ("", "t'", "")])], []),
    ("x' two ways", "d", [(1, [("", "x'", "")])], [(1, [("d", "c'", ""), ("d", "x", "d"), ("", "d'", "d")])]),
    ("s' two ways", "dd", [(1, [("", "s'", "")])], [(1, [("dd", "c'", ""), ("d", "t'", "d"), ("", "d'", "dd")])]),
]


def _eval_side(source: str, side, n: int, shape) -> sp.csr_matrix:
    mat = sp.csr_matrix(shape, dtype=np.int64)
    for coeff, slices in side:
        mat = _check(mat + coeff * eval_slices(source, slices, n))
    return mat


def relations_selftest(max_level: int) -> dict:
    """Both sides of every defining and derived relation at levels ``0..max_level``."""
    rows = []
    for name, source, lhs, rhs in RELATIONS:
        target = slice_source_target(source, lhs[0][1])
        levels = []
        for n in range(max_level + 1):
            shape = (eval_object(target, n).dim, eval_object(source, n).dim)
            ok = matrices_equal(_eval_side(source, lhs, n, shape), _eval_side(source, rhs, n, shape))
            levels.append({"n": n, "dims": list(shape), "pass": ok})
        rows.append({"name": name, "source": format_word(source), "target": format_word(target),
                     "pass": all(lv["pass"] for lv in levels), "levels": levels})
    return {"schema": "heis/1", "level": max_level, "relations": rows, "all_pass": all(r["pass"] for r in rows)}


def closure_selftest(max_length: int, max_level: int, sample: int = 0, seed: int = 0) -> dict:
    """Compose every pair of restricted basis diagrams with words of length
    ``<= max_length`` in the engine and compare with the oracle product.

    ``sample > 0`` checks a seeded random subset of the pairs instead.
    """
    import random

    from . import engine
    from .diagrams import restricted_basis
    from .words import all_words

    words = list(all_words(max_length))
    bases = {(x, y): restricted_basis(x, y) for x in words for y in words}
    pairs = [(g, f) for (x, y), fs in bases.items() if fs for z in words for g in bases[(y, z)] for f in fs]
    if sample and sample < len(pairs):
        pairs = random.Random(seed).sample(pairs, sample)
    failures = []
    non_closure = 0
    early_zero = 0
    terms = 0
    for g, f in pairs:
        glued = engine.glue(g, f)
        try:
            result = engine.reduce(glued)
        except engine.InternalNonClosure as exc:
            non_closure += 1
            failures.append({"upper": str(g), "lower": str(f), "error": str(exc)})
            continue
        if engine.early_zero(glued):
            early_zero += 1
        terms += len(result.terms)
        for n in range(max_level + 1):
            expected = (eval_diagram(g, n) @ eval_diagram(f, n)).tocsr()
            if not matrices_equal(eval_morphism(result, n), expected):
                failures.append({"upper": str(g), "lower": str(f), "level": n, "result": repr(result)})
                break
    return {
        "schema": "heis/1",
        "max_length": max_length,
        "level": max_level,
        "pairs": len(pairs),
        "early_zero": early_zero,
        "result_terms": terms,
        "non_closure": non_closure,
        "failures": failures,
        "pass": not failures,
    }
