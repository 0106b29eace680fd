"""Composition in the semisimple subcategory.

Morphisms are integer combinations of restricted basis diagrams.  Vertical
composition ``g . f`` factors ``g`` into elementary slices (``t``, ``t'``,
``c``, ``d'``, plus ``s``/``s'`` where a cup or cap is crossed by a bridge of
the same local orientation) and applies them one at a time to ``f``.  Each
slice acts on a plain matching by one of a handful of local rules; only the
final terms are required to be restricted.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import diagrams as dg
from .diagrams import BOTTOM, TOP, BasisDiagram, Strands
from .words import format_word, parse_word


class NonRestrictedInput(ValueError):
    """Raised when a diagram outside the semisimple subcategory is supplied."""


class InternalNonClosure(RuntimeError):
    """Raised if a rewrite produces a non-restricted term (a bug, never expected)."""


class CompositionTypeError(TypeError):
    pass


class Morphism:
    """An integer (or mod-p) linear combination of basis diagrams ``source -> target``."""

    __slots__ = ("source", "target", "terms", "modulus")

    def __init__(self, source: str, target: str, terms: Optional[Dict[BasisDiagram, int]] = None, modulus: Optional[int] = None):
        self.source = parse_word(source)
        self.target = parse_word(target)
        self.modulus = modulus
        clean = {}
        for d, k in (terms or {}).items():
            if d.source != self.source or d.target != self.target:
                raise CompositionTypeError(f"term {d} does not have type {self._type()}")
            if modulus:
                k %= modulus
            if k:
                clean[d] = k
        self.terms = clean

    def _type(self) -> str:
        return f"{format_word(self.source)} -> {format_word(self.target)}"

    @classmethod
    def zero(cls, source: str, target: str, modulus: Optional[int] = None) -> "Morphism":
        return cls(source, target, {}, modulus)

    @classmethod
    def identity(cls, w: str, modulus: Optional[int] = None) -> "Morphism":
        w = parse_word(w)
        return cls.of(dg.identity_diagram(w), modulus=modulus)

    @classmethod
    def of(cls, d: BasisDiagram, coeff: int = 1, modulus: Optional[int] = None) -> "Morphism":
        return cls(d.source, d.target, {d: coeff}, modulus)

    @classmethod
    def generator(cls, gen: str, left: str = "", right: str = "") -> "Morphism":
        return cls.of(dg.elementary(parse_word(left), gen, parse_word(right)))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> List[Tuple[BasisDiagram, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def _same_type(self, other: "Morphism") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise CompositionTypeError(f"cannot add {self._type()} and {other._type()}")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._same_type(other)
        out = dict(self.terms)
        for d, k in other.terms.items():
            out[d] = out.get(d, 0) + k
        return Morphism(self.source, self.target, out, self.modulus or other.modulus)

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, {d: -k for d, k in self.terms.items()}, self.modulus)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def __rmul__(self, k: int) -> "Morphism":
        return Morphism(self.source, self.target, {d: k * v for d, v in self.terms.items()}, self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self._type()}]"
        return " + ".join(f"{k}*{d}" for d, k in self.items())

    def reduce_mod(self, p: int) -> "Morphism":
        return Morphism(self.source, self.target, self.terms, p)


# -- the local rewriting step -----------------------------------------------


def apply_slice(f: BasisDiagram, left: str, gen: str, right: str) -> Dict[BasisDiagram, int]:
    """Reduce ``(id_left (x) gen (x) id_right) . f`` to plain matchings."""
    src, tgt = dg.generator_type(gen)
    if f.target != left + src + right:
        raise CompositionTypeError(f"slice {gen} does not fit on {format_word(f.target)}")
    p = len(left)
    st = Strands.of(f)
    a, b = (TOP, p), (TOP, p + 1)
    if gen == "c":
        st.insert_pair(TOP, p, "du")
        return {st.diagram(): 1}
    if gen == "d'":
        if st.mate[a] == b:  # counterclockwise bubble
            st.remove_pair(TOP, p)
            return {st.diagram(): 1}
        if st.crosses(a, b):  # d' . t = 0
            return {}
        st.join(TOP, p)
        return {st.diagram(): 1}
    if gen == "t":
        if st.crosses(a, b):  # f = t' . f0 and t . t' = 1 - c . d'
            st.swap(TOP, p)
            f0 = st.diagram()
            out = {f0: 1}
            for g, k in apply_slice(f0, left, "d'", right).items():
                for h, m in apply_slice(g, left, "c", right).items():
                    out[h] = out.get(h, 0) - k * m
            return {d: k for d, k in out.items() if k}
        st.swap(TOP, p)
        return {st.diagram(): 1}
    if gen == "t'":
        if st.mate[a] == b:  # t' . c = 0
            return {}
        st.swap(TOP, p)  # uncrossing uses t' . t = 1, crossing is a new reduced lift
        return {st.diagram(): 1}
    if gen in ("s", "s'"):
        st.swap(TOP, p)  # same-orientation double crossings cancel exactly
        return {st.diagram(): 1}
    raise NonRestrictedInput(f"generator {gen} cannot be applied by the rewriter")


def _check_restricted(d: BasisDiagram) -> None:
    if not dg.is_restricted(d):
        raise NonRestrictedInput(f"diagram {d} is not restricted")


# -- gluing ------------------------------------------------------------------


@dataclass(frozen=True)
class GluedString:
    segments: Tuple[Tuple[str, dg.BoundaryPoint], ...]  # (layer, string name in that layer)
    closed: bool


@dataclass(frozen=True)
class GluedDiagram:
    lower: BasisDiagram
    upper: BasisDiagram
    strings: Tuple[GluedString, ...]

    @property
    def source(self) -> str:
        return self.lower.source

    @property
    def target(self) -> str:
        return self.upper.target


def glue(g: BasisDiagram, f: BasisDiagram) -> GluedDiagram:
    """Stack ``g`` on top of ``f`` and trace every glued string."""
    if g.source != f.target:
        raise CompositionTypeError(f"cannot compose {format_word(g.source)}<-{format_word(g.target)} after "
                                   f"{format_word(f.source)}->{format_word(f.target)}")
    layers = {"f": f.matching, "g": g.matching}

    def mate(layer, pt):
        a, b = layers[layer].pair_of(pt)
        return b if pt == a else a

    def across(layer, pt):
        if layer == "f" and pt.side == TOP:
            return "g", dg.BoundaryPoint(BOTTOM, pt.i)
        if layer == "g" and pt.side == BOTTOM:
            return "f", dg.BoundaryPoint(TOP, pt.i)
        return None

    seen = set()
    strings = []

    def trace(layer, pt, closed):
        segs = []
        while (layer, pt) not in seen:
            seen.add((layer, pt))
            far = mate(layer, pt)
            seen.add((layer, far))
            segs.append((layer, layers[layer].pair_of(pt)[0]))
            nxt = across(layer, far)
            if nxt is None:
                break
            layer, pt = nxt
        strings.append(GluedString(tuple(segs), closed))

    for i in range(1, len(f.source) + 1):
        if ("f", dg.BoundaryPoint(BOTTOM, i)) not in seen:
            trace("f", dg.BoundaryPoint(BOTTOM, i), False)
    for j in range(1, len(g.target) + 1):
        if ("g", dg.BoundaryPoint(TOP, j)) not in seen:
            trace("g", dg.BoundaryPoint(TOP, j), False)
    for k in range(1, len(f.target) + 1):
        if ("f", dg.BoundaryPoint(TOP, k)) not in seen:
            trace("f", dg.BoundaryPoint(TOP, k), True)
    return GluedDiagram(f, g, tuple(strings))


def early_zero(gd: GluedDiagram) -> Optional[str]:
    """Name the first local vanishing pattern present in the glued picture, if any.

    * a glued string crosses itself;
    * a cup of the lower layer meets a cap of the upper layer on an open string;
    * a cup (or cap) whose two continuations cross each other in the other layer.
    """
    cross = {"f": dg.forced_crossings(gd.lower.matching), "g": dg.forced_crossings(gd.upper.matching)}
    prof = {"f": gd.lower.matching, "g": gd.upper.matching}
    for s in gd.strings:
        by_layer = defaultdict(list)
        for layer, name in s.segments:
            by_layer[layer].append(name)
        for layer, names in by_layer.items():
            for i in range(len(names)):
                for j in range(i + 1, len(names)):
                    if frozenset((names[i], names[j])) in cross[layer]:
                        return "self-intersection"
    for s in gd.strings:
        segs = s.segments
        n = len(segs)
        kinds = [dg.string_profile(prof[layer], name).kind for layer, name in segs]
        for k in range(n if s.closed else n - 1):
            nxt = (k + 1) % n
            if s.closed:
                continue
            pair = {segs[k][0]: kinds[k], segs[nxt][0]: kinds[nxt]}
            if pair.get("f") is dg.Kind.CUP and pair.get("g") is dg.Kind.CAP:
                return "zigzag"
        for k in range(n):
            layer, name = segs[k]
            if kinds[k] not in (dg.Kind.CUP, dg.Kind.CAP) or n < 3:
                continue
            before, after = segs[k - 1], segs[(k + 1) % n]
            if not s.closed and (k == 0 or k == n - 1):
                continue
            if before[0] == after[0] and before[1] != after[1]:
                if frozenset((before[1], after[1])) in cross[before[0]]:
                    return "loop"
    return None


def reduce(gd: GluedDiagram) -> Morphism:
    """Normal form of a glued pair of restricted diagrams."""
    f, g = gd.lower, gd.upper
    _check_restricted(f)
    _check_restricted(g)
    if early_zero(gd):
        return Morphism.zero(gd.source, gd.target)
    return Morphism(gd.source, gd.target, _compose_basis(g, f))


_APPLICABLE = frozenset({"t", "t'", "c", "d'", "s", "s'"})


def _compose_basis(g: BasisDiagram, f: BasisDiagram) -> Dict[BasisDiagram, int]:
    sw = dg.to_slices(g)
    if any(gen not in _APPLICABLE for _, gen, _ in sw.slices):
        raise NonRestrictedInput(f"diagram {g} is not restricted")
    cur = {f: 1}
    for left, gen, right in sw.slices:
        nxt: Dict[BasisDiagram, int] = {}
        for d, k in cur.items():
            for e, m in apply_slice(d, left, gen, right).items():
                nxt[e] = nxt.get(e, 0) + k * m
        cur = {d: k for d, k in nxt.items() if k}
    for d in cur:
        if not dg.is_restricted(d):
            raise InternalNonClosure(f"rewrite produced {d}")
    return cur


def compose(g: Morphism, f: Morphism, modulus: Optional[int] = None) -> Morphism:
    """Vertical composite ``g . f`` (``f`` first)."""
    if g.source != f.target:
        raise CompositionTypeError(f"cannot compose {g._type()} after {f._type()}")
    p = modulus or g.modulus or f.modulus
    out: Dict[BasisDiagram, int] = {}
    for gd, a in g.terms.items():
        _check_restricted(gd)
        for fd, b in f.terms.items():
            _check_restricted(fd)
            for d, k in reduce(glue(gd, fd)).terms.items():
                out[d] = out.get(d, 0) + a * b * k
    return Morphism(f.source, g.target, out, p)


def tensor_diagrams(a: BasisDiagram, b: BasisDiagram) -> BasisDiagram:
    """Place ``a`` to the left of ``b``."""
    na, ma = len(a.source), len(a.target)
    pairs = []

    def shift(pt):
        return dg.BoundaryPoint(pt.side, pt.i + (na if pt.side == BOTTOM else ma))

    pairs.extend(a.matching.pairs)
    pairs.extend((shift(p), shift(q)) for p, q in b.matching.pairs)
    m = dg.Matching.build(a.source + b.source, a.target + b.target, pairs)
    dots = list(a.dots)
    for name, v in b.dots:
        dots.append((m.pair_of(shift(name))[0], v))
    return BasisDiagram(m, tuple(dots), a.bubbles + b.bubbles)


def hcompose(a: Morphism, b: Morphism) -> Morphism:
    """Horizontal composite ``a * b`` (``a`` on the left)."""
    out: Dict[BasisDiagram, int] = {}
    for da, ka in a.terms.items():
        for db, kb in b.terms.items():
            d = tensor_diagrams(da, db)
            out[d] = out.get(d, 0) + ka * kb
    return Morphism(a.source + b.source, a.target + b.target, out, a.modulus or b.modulus)


def homs(x: str, y: str) -> List[Morphism]:
    return [Morphism.of(d) for d in dg.restricted_basis(parse_word(x), parse_word(y))]


# -- sums of objects and matrices --------------------------------------------


@dataclass(frozen=True)
class SumObject:
    summands: Tuple[str, ...]

    def __init__(self, summands: Iterable[str]):
        object.__setattr__(self, "summands", tuple(parse_word(w) for w in summands))

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator[str]:
        return iter(self.summands)

    def __str__(self) -> str:
        return " + ".join(format_word(w) for w in self.summands) or "0"


class MorphismMatrix:
    """``entries[i][j] : source[j] -> target[i]``."""

    def __init__(self, source: SumObject, target: SumObject, entries: Sequence[Sequence[Morphism]]):
        self.source, self.target = source, target
        self.entries = [list(row) for row in entries]
        if len(self.entries) != len(target):
            raise CompositionTypeError("row count does not match target")
        for i, row in enumerate(self.entries):
            if len(row) != len(source):
                raise CompositionTypeError("column count does not match source")
            for j, e in enumerate(row):
                if (e.source, e.target) != (source.summands[j], target.summands[i]):
                    raise CompositionTypeError(f"entry ({i},{j}) has type {e._type()}")

    @classmethod
    def identity(cls, obj: SumObject) -> "MorphismMatrix":
        n = len(obj)
        rows = [[Morphism.identity(obj.summands[i]) if i == j else Morphism.zero(obj.summands[j], obj.summands[i])
                 for j in range(n)] for i in range(n)]
        return cls(obj, obj, rows)

    def __eq__(self, other) -> bool:
        return (self.source, self.target, self.entries) == (other.source, other.target, other.entries)

    def __repr__(self) -> str:
        return f"MorphismMatrix({self.source} -> {self.target}, {self.entries})"


def matrix_compose(a: MorphismMatrix, b: MorphismMatrix) -> MorphismMatrix:
    """``a . b`` (``b`` first)."""
    if a.source != b.target:
        raise CompositionTypeError(f"cannot compose matrices {a.source} vs {b.target}")
    rows = []
    for i, w in enumerate(a.target.summands):
        row = []
        for j, v in enumerate(b.source.summands):
            acc = Morphism.zero(v, w)
            for k in range(len(a.source)):
                acc = acc + compose(a.entries[i][k], b.entries[k][j])
            row.append(acc)
        rows.append(row)
    return MorphismMatrix(b.source, a.target, rows)


def heisenberg_iso() -> Tuple[MorphismMatrix, MorphismMatrix]:
    """``[t c] : ud + 1 -> du`` and its inverse ``[t'; d'] : du -> ud + 1``."""
    t, c = Morphism.generator("t"), Morphism.generator("c")
    tp, dp = Morphism.generator("t'"), Morphism.generator("d'")
    forward = MorphismMatrix(SumObject(["ud", ""]), SumObject(["du"]), [[t, c]])
    backward = MorphismMatrix(SumObject(["du"]), SumObject(["ud", ""]), [[tp], [dp]])
    return forward, backward


def _precompose_slice(e: Morphism, left: str, gen: str, right: str) -> Morphism:
    return compose(e, Morphism.generator(gen, left, right))


def _postcompose_slice(e: Morphism, left: str, gen: str, right: str) -> Morphism:
    src, tgt = dg.generator_type(gen)
    out: Dict[BasisDiagram, int] = {}
    for d, k in e.terms.items():
        for r, m in apply_slice(d, left, gen, right).items():
            out[r] = out.get(r, 0) + k * m
    return Morphism(e.source, left + tgt + right, out)


def decompose_object(w: str, with_matrices: bool = True):
    """Split ``w`` into simples by repeatedly replacing the leftmost ``du`` with ``ud + 1``.

    Returns ``(multiplicities, forward, backward)`` where ``forward : w -> sum``
    and ``backward : sum -> w`` are mutually inverse (``None`` when
    ``with_matrices`` is false).
    """
    from collections import Counter

    from .words import as_simple

    w = parse_word(w)
    summands = [w]
    fwd = [Morphism.identity(w)] if with_matrices else None  # one entry per summand: w -> summand
    bwd = [Morphism.identity(w)] if with_matrices else None  # summand -> w
    done = False
    while not done:
        done = True
        for i, v in enumerate(summands):
            k = v.find("du")
            if k < 0:
                continue
            done = False
            left, right = v[:k], v[k + 2:]
            summands[i:i + 1] = [left + "ud" + right, left + right]
            if with_matrices:
                f, b = fwd[i], bwd[i]
                fwd[i:i + 1] = [_postcompose_slice(f, left, "t'", right), _postcompose_slice(f, left, "d'", right)]
                bwd[i:i + 1] = [_precompose_slice(b, left, "t", right), _precompose_slice(b, left, "c", right)]
            break
    mult = Counter(as_simple(v) for v in summands)
    if not with_matrices:
        return mult, None, None
    target = SumObject(summands)
    forward = MorphismMatrix(SumObject([w]), target, [[e] for e in fwd])
    backward = MorphismMatrix(target, SumObject([w]), [bwd])
    return mult, forward, backward
