"""Standard-basis diagrams: (X, Y)-matchings with optional dot and bubble decorations.

Crossings are never stored.  Boundary points are ordered cyclically (bottom
left to right, then top right to left) and two strings cross exactly when
their endpoints interleave in that order, which is the crossing set of any
reduced lift of the matching.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations, product
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .words import DOWN, UP, format_word, parse_word

BOTTOM = "B"
TOP = "T"


class BoundaryPoint(NamedTuple):
    side: str  # "B" or "T"
    i: int  # 1-based position in the boundary word

    def __str__(self) -> str:
        return f"{self.side}{self.i}"

    @classmethod
    def parse(cls, text: str) -> "BoundaryPoint":
        return cls(text[0], int(text[1:]))


class Kind(str, enum.Enum):
    CUP = "cup"
    CAP = "cap"
    BRIDGE = "bridge"
    BUBBLE = "bubble"


class Rotation(str, enum.Enum):
    CLOCKWISE = "clockwise"
    COUNTERCLOCKWISE = "counterclockwise"


class Direction(str, enum.Enum):
    UPWARD = "upward"
    DOWNWARD = "downward"


class StringProfile(NamedTuple):
    kind: Kind
    orientation: enum.Enum  # Rotation for cups/caps/bubbles, Direction for bridges


def _letter(source: str, target: str, pt: BoundaryPoint) -> str:
    return source[pt.i - 1] if pt.side == BOTTOM else target[pt.i - 1]


def _is_in(source: str, target: str, pt: BoundaryPoint) -> bool:
    """Points where the orientation flows into the diagram: bottom up, top down."""
    letter = _letter(source, target, pt)
    return (letter == UP) if pt.side == BOTTOM else (letter == DOWN)


@dataclass(frozen=True, order=True)
class Matching:
    source: str
    target: str
    pairs: Tuple[Tuple[BoundaryPoint, BoundaryPoint], ...]

    def key(self, pt: BoundaryPoint) -> int:
        """Position of ``pt`` in the cyclic boundary order."""
        if pt.side == BOTTOM:
            return pt.i - 1
        return len(self.source) + len(self.target) - pt.i

    @classmethod
    def build(cls, source: str, target: str, pairs: Iterable[Sequence[BoundaryPoint]]) -> "Matching":
        """Validate and canonicalize (each pair sorted cyclically, pairs sorted)."""
        probe = cls(source, target, ())
        seen = set()
        canon = []
        for a, b in pairs:
            a, b = BoundaryPoint(*a), BoundaryPoint(*b)
            for pt in (a, b):
                limit = len(source) if pt.side == BOTTOM else len(target)
                if pt.side not in (BOTTOM, TOP) or not 1 <= pt.i <= limit:
                    raise ValueError(f"boundary point {pt} out of range")
                if pt in seen:
                    raise ValueError(f"boundary point {pt} used twice")
                seen.add(pt)
            if _is_in(source, target, a) == _is_in(source, target, b):
                raise ValueError(f"pair {a}-{b} does not respect orientations")
            if probe.key(b) < probe.key(a):
                a, b = b, a
            canon.append((a, b))
        if len(seen) != len(source) + len(target):
            raise ValueError("matching does not cover every boundary point")
        canon.sort(key=lambda pr: probe.key(pr[0]))
        return cls(source, target, tuple(canon))

    @property
    def strings(self) -> Tuple[BoundaryPoint, ...]:
        """Canonical string names: the cyclically smallest endpoint of each pair."""
        return tuple(a for a, _ in self.pairs)

    def pair_of(self, name: BoundaryPoint) -> Tuple[BoundaryPoint, BoundaryPoint]:
        for pr in self.pairs:
            if name in pr:
                return pr
        raise KeyError(name)

    def sort_key(self):
        return tuple((self.key(a), self.key(b)) for a, b in self.pairs)

    def __str__(self) -> str:
        body = " ".join(f"{a}-{b}" for a, b in self.pairs)
        return f"{format_word(self.source)}->{format_word(self.target)}[{body}]"


@dataclass(frozen=True)
class BasisDiagram:
    """A decorated reduced lift.  ``dots`` maps string names to positive counts;
    ``bubbles`` lists the dot labels of clockwise bubbles (sorted)."""

    matching: Matching
    dots: Tuple[Tuple[BoundaryPoint, int], ...] = ()
    bubbles: Tuple[int, ...] = ()

    def __post_init__(self):
        dots = tuple(sorted(((BoundaryPoint(*k), v) for k, v in self.dots if v), key=lambda kv: self.matching.key(kv[0])))
        object.__setattr__(self, "dots", dots)
        object.__setattr__(self, "bubbles", tuple(sorted(self.bubbles)))
        names = set(self.matching.strings)
        for name, count in dots:
            if name not in names or count < 0:
                raise ValueError(f"bad dot decoration {name}:{count}")

    @property
    def source(self) -> str:
        return self.matching.source

    @property
    def target(self) -> str:
        return self.matching.target

    @property
    def is_plain(self) -> bool:
        return not self.dots and not self.bubbles

    def dot_map(self) -> Dict[BoundaryPoint, int]:
        return dict(self.dots)

    def sort_key(self):
        return (self.matching.sort_key(), tuple((self.matching.key(k), v) for k, v in self.dots), self.bubbles)

    def __lt__(self, other: "BasisDiagram") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        extra = ""
        if self.dots:
            extra += " dots{" + ",".join(f"{k}:{v}" for k, v in self.dots) + "}"
        if self.bubbles:
            extra += " bubbles" + str(list(self.bubbles))
        return str(self.matching) + extra


def enumerate_matchings(x: str, y: str) -> List[Matching]:
    """All (x, y)-matchings in lexicographic order."""
    pts = [BoundaryPoint(BOTTOM, i + 1) for i in range(len(x))] + [BoundaryPoint(TOP, j + 1) for j in range(len(y))]
    ins = [p for p in pts if _is_in(x, y, p)]
    outs = [p for p in pts if not _is_in(x, y, p)]
    if len(ins) != len(outs):
        return []
    found = [Matching.build(x, y, zip(ins, perm)) for perm in permutations(outs)]
    return sorted(found, key=Matching.sort_key)


def interleave(m: Matching, p: Tuple[BoundaryPoint, BoundaryPoint], q: Tuple[BoundaryPoint, BoundaryPoint]) -> bool:
    a, b = sorted((m.key(p[0]), m.key(p[1])))
    inside = [a < m.key(pt) < b for pt in q]
    return inside[0] != inside[1]


def forced_crossings(m: Matching) -> frozenset:
    """Unordered pairs of string names whose endpoints interleave."""
    out = set()
    prs = m.pairs
    for k in range(len(prs)):
        for r in range(k + 1, len(prs)):
            if interleave(m, prs[k], prs[r]):
                out.add(frozenset((prs[k][0], prs[r][0])))
    return frozenset(out)


def string_profile(m: Matching, s: BoundaryPoint) -> StringProfile:
    a, b = m.pair_of(s)
    if a.side != b.side:
        return StringProfile(Kind.BRIDGE, Direction.UPWARD if _letter(m.source, m.target, a) == UP else Direction.DOWNWARD)
    kind = Kind.CUP if a.side == TOP else Kind.CAP
    up_pt, down_pt = (a, b) if _letter(m.source, m.target, a) == UP else (b, a)
    clockwise = up_pt.i < down_pt.i
    return StringProfile(kind, Rotation.CLOCKWISE if clockwise else Rotation.COUNTERCLOCKWISE)


def is_restricted(d: BasisDiagram) -> bool:
    """Membership in the semisimple subcategory: no decorations, only
    counterclockwise cups and caps, and bridges cross only when oppositely
    oriented."""
    if not d.is_plain:
        return False
    m = d.matching
    profiles = {s: string_profile(m, s) for s in m.strings}
    for prof in profiles.values():
        if prof.kind in (Kind.CUP, Kind.CAP) and prof.orientation is Rotation.CLOCKWISE:
            return False
    for pair in forced_crossings(m):
        p, q = (profiles[s] for s in pair)
        if p.kind is Kind.BRIDGE and q.kind is Kind.BRIDGE and p.orientation is q.orientation:
            return False
    return True


def basis(x: str, y: str, max_dots: int = 0, max_bubble_label: int = 0, max_bubbles: int = 0) -> List[BasisDiagram]:
    """Bounded slice of the full basis ``B(x, y)``; the default bounds give ``B_0``."""
    out = []
    bubble_sets = [()]
    for count in range(1, max_bubbles + 1):
        bubble_sets.extend(combinations_with_replacement(range(max_bubble_label + 1), count))
    for m in enumerate_matchings(x, y):
        names = m.strings
        for counts in product(range(max_dots + 1), repeat=len(names)):
            for bub in bubble_sets:
                out.append(BasisDiagram(m, tuple(zip(names, counts)), bub))
    return out


def restricted_basis(x: str, y: str) -> List[BasisDiagram]:
    return [d for d in (BasisDiagram(m) for m in enumerate_matchings(x, y)) if is_restricted(d)]


def hom_dim_restricted(x: str, y: str) -> int:
    return len(restricted_basis(x, y))


def identity_diagram(w: str) -> BasisDiagram:
    return BasisDiagram(Matching.build(w, w, [(BoundaryPoint(BOTTOM, i + 1), BoundaryPoint(TOP, i + 1)) for i in range(len(w))]))


# -- mutable working form ---------------------------------------------------


class Strands:
    """Mutable matching used while factoring or rewriting diagrams.

    Points are ``("B", k)`` / ``("T", k)`` with 0-based ``k``.
    """

    def __init__(self, bottom: str, top: str, mate: Dict[tuple, tuple], dots: Optional[Dict[tuple, int]] = None):
        self.bottom = list(bottom)
        self.top = list(top)
        self.mate = dict(mate)
        self.dots = dict(dots or {})  # keyed by one endpoint (either)

    @classmethod
    def of(cls, d: BasisDiagram) -> "Strands":
        mate = {}
        for a, b in d.matching.pairs:
            pa, pb = (a.side, a.i - 1), (b.side, b.i - 1)
            mate[pa], mate[pb] = pb, pa
        dots = {(k.side, k.i - 1): v for k, v in d.dots}
        return cls(d.source, d.target, mate, dots)

    def copy(self) -> "Strands":
        return Strands("".join(self.bottom), "".join(self.top), self.mate, self.dots)

    def key(self, pt: tuple) -> int:
        side, k = pt
        return k if side == BOTTOM else len(self.bottom) + len(self.top) - 1 - k

    def crosses(self, p: tuple, q: tuple) -> bool:
        a, b = sorted((self.key(p), self.key(self.mate[p])))
        ins = [a < self.key(r) < b for r in (q, self.mate[q])]
        return ins[0] != ins[1]

    def dot_count(self, pt: tuple) -> int:
        return self.dots.get(pt, 0) + self.dots.get(self.mate[pt], 0)

    def _reindex(self, fn) -> None:
        mate = {}
        for p, q in self.mate.items():
            np_, nq = fn(p), fn(q)
            if np_ is not None and nq is not None:
                mate[np_] = nq
        dots = {}
        for p, v in self.dots.items():
            np_ = fn(p)
            if np_ is not None and v:
                dots[np_] = dots.get(np_, 0) + v
        self.mate, self.dots = mate, dots

    def _move_dots(self, src: tuple, dst: tuple) -> None:
        v = self.dots.pop(src, 0)
        if v:
            self.dots[dst] = self.dots.get(dst, 0) + v

    def remove_pair(self, side: str, k: int) -> None:
        """Delete positions ``k, k+1`` on ``side`` (their strings must be joined already)."""
        def fn(p):
            s, r = p
            if s != side:
                return p
            if r in (k, k + 1):
                return None
            return (s, r - 2) if r > k + 1 else p
        row = self.bottom if side == BOTTOM else self.top
        del row[k:k + 2]
        self._reindex(fn)

    def insert_pair(self, side: str, k: int, letters: str) -> None:
        """Insert an adjacent cup (top) or cap (bottom) at positions ``k, k+1``."""
        def fn(p):
            s, r = p
            return (s, r + 2) if s == side and r >= k else p
        self._reindex(fn)
        row = self.bottom if side == BOTTOM else self.top
        row[k:k] = list(letters)
        a, b = (side, k), (side, k + 1)
        self.mate[a], self.mate[b] = b, a

    def swap(self, side: str, k: int) -> None:
        """Exchange the strings ending at positions ``k`` and ``k+1``."""
        a, b = (side, k), (side, k + 1)
        ma, mb = self.mate[a], self.mate[b]
        row = self.bottom if side == BOTTOM else self.top
        row[k], row[k + 1] = row[k + 1], row[k]
        da, db = self.dots.pop(a, 0), self.dots.pop(b, 0)
        if ma == b:  # cup/cap on exactly these two points
            self.mate[a], self.mate[b] = b, a
        else:
            self.mate[b], self.mate[ma] = ma, b
            self.mate[a], self.mate[mb] = mb, a
        if da:
            self.dots[b] = da
        if db:
            self.dots[a] = db

    def join(self, side: str, k: int) -> None:
        """Connect the strings at ``k`` and ``k+1`` through a turnback and drop the two points."""
        a, b = (side, k), (side, k + 1)
        ma, mb = self.mate[a], self.mate[b]
        dots = self.dots.pop(a, 0) + self.dots.pop(b, 0)
        if ma == b:
            raise ValueError("joining a cup/cap to itself closes a loop")
        self.mate[ma], self.mate[mb] = mb, ma
        if dots:
            self.dots[ma] = self.dots.get(ma, 0) + dots
        self.remove_pair(side, k)

    def diagram(self, bubbles: Tuple[int, ...] = ()) -> BasisDiagram:
        seen = set()
        pairs = []
        for p, q in self.mate.items():
            if p in seen:
                continue
            seen.update((p, q))
            pairs.append((BoundaryPoint(p[0], p[1] + 1), BoundaryPoint(q[0], q[1] + 1)))
        m = Matching.build("".join(self.bottom), "".join(self.top), pairs)
        dots = {}
        for p, v in self.dots.items():
            name = m.pair_of(BoundaryPoint(p[0], p[1] + 1))[0]
            dots[name] = dots.get(name, 0) + v
        return BasisDiagram(m, tuple(dots.items()), bubbles)


# -- slice factorization ----------------------------------------------------

RESTRICTED_GENERATORS = frozenset({"t", "t'", "c", "d'"})


class SliceError(Exception):
    pass


@dataclass(frozen=True)
class SliceWord:
    """A formal composite of elementary slices ``(left, gen, right)``, bottom first."""

    source: str
    target: str
    slices: Tuple[Tuple[str, str, str], ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.slices)

    @property
    def restricted(self) -> bool:
        return all(g in RESTRICTED_GENERATORS for _, g, _ in self.slices)


_CUP = {("d", "u"): "c", ("u", "d"): "c'"}
_CAP = {("d", "u"): "d'", ("u", "d"): "d"}
# crossing generator keyed by the letters on its *target* side (top peel)
_CROSS_BY_TARGET = {("u", "d"): "t'", ("d", "u"): "t", ("u", "u"): "s", ("d", "d"): "s'"}
# keyed by the letters on its *source* side (bottom peel)
_CROSS_BY_SOURCE = {("u", "d"): "t", ("d", "u"): "t'", ("u", "u"): "s", ("d", "d"): "s'"}
_DOT = {"u": "x", "d": "x'"}


def _peel_moves(st: Strands):
    moves = []
    for side, row in ((TOP, st.top), (BOTTOM, st.bottom)):
        for k in range(len(row) - 1):
            a, b = (side, k), (side, k + 1)
            pair = (row[k], row[k + 1])
            if st.mate[a] == b:
                gen = (_CUP if side == TOP else _CAP)[pair]
                moves.append((gen in RESTRICTED_GENERATORS, side, k, "turn", gen))
            elif st.crosses(a, b):
                gen = (_CROSS_BY_TARGET if side == TOP else _CROSS_BY_SOURCE)[pair]
                moves.append((gen in RESTRICTED_GENERATORS, side, k, "cross", gen))
    return moves


def to_slices(d: BasisDiagram, restricted_only: bool = False) -> SliceWord:
    """Factor ``d`` into elementary slices by peeling adjacent cups, caps and
    crossings off the top and bottom boundaries.

    Restricted generators are preferred; with ``restricted_only`` a diagram that
    needs ``s``, ``s'``, ``c'`` or ``d`` raises :class:`SliceError`.  Dots become
    ``x``/``x'`` slices next to their string's cup, cap, or in the middle.
    """
    if d.bubbles:
        raise SliceError("bubbles cannot be expressed as a slice word")
    st = Strands.of(d)
    lower: List[tuple] = []
    upper: List[tuple] = []  # collected top-down
    while True:
        moves = _peel_moves(st)
        if not moves:
            break
        good = [mv for mv in moves if mv[0]]
        if restricted_only and not good:
            raise SliceError(f"no restricted factorization step for {d}")
        _, side, k, what, gen = (good or moves)[0]
        row = st.top if side == TOP else st.bottom
        letters = "".join(row)
        if what == "turn":
            up_leg = k + 1 if row[k] == "d" else k
            n_dots = st.dot_count((side, k))
            if side == TOP:
                for _ in range(n_dots):
                    upper.append((letters[:up_leg], "x", letters[up_leg + 1:]))
                upper.append((letters[:k], gen, letters[k + 2:]))
            else:
                for _ in range(n_dots):
                    lower.append((letters[:up_leg], "x", letters[up_leg + 1:]))
                lower.append((letters[:k], gen, letters[k + 2:]))
            st.dots.pop((side, k), None)
            st.dots.pop((side, k + 1), None)
            st.remove_pair(side, k)
        else:
            if side == TOP:
                upper.append((letters[:k], gen, letters[k + 2:]))
            else:
                lower.append((letters[:k], gen, letters[k + 2:]))
            st.swap(side, k)
    # remaining strands run straight up
    if "".join(st.bottom) != "".join(st.top):
        raise SliceError(f"could not factor {d}")
    core = "".join(st.bottom)
    for k, letter in enumerate(core):
        for _ in range(st.dot_count((BOTTOM, k))):
            lower.append((core[:k], _DOT[letter], core[k + 1:]))
    return SliceWord(d.source, d.target, tuple(lower + upper[::-1]))


# -- elementary diagrams and formal gluing -----------------------------------

_GEN_TYPES = {
    "s": ("uu", "uu"), "s'": ("dd", "dd"), "t": ("ud", "du"), "t'": ("du", "ud"),
    "c": ("", "du"), "c'": ("", "ud"), "d": ("ud", ""), "d'": ("du", ""),
    "x": ("u", "u"), "x'": ("d", "d"),
}


def generator_type(gen: str) -> Tuple[str, str]:
    return _GEN_TYPES[gen]


def elementary(left: str, gen: str, right: str) -> BasisDiagram:
    """The basis diagram of the slice ``id_left (x) gen (x) id_right``."""
    src, tgt = _GEN_TYPES[gen]
    L = len(left)
    st = Strands.of(identity_diagram(left + right))
    if gen in ("c", "c'"):
        st.insert_pair(TOP, L, tgt)
        return st.diagram()
    if gen in ("d", "d'"):
        st.insert_pair(BOTTOM, L, src)
        return st.diagram()
    st = Strands.of(identity_diagram(left + src + right))
    if gen in ("x", "x'"):
        st.dots[(BOTTOM, L)] = 1
        return st.diagram()
    st.swap(TOP, L)
    return st.diagram()


def stack(lower: BasisDiagram, upper: BasisDiagram) -> Tuple[BasisDiagram, int]:
    """Glue matchings only (crossings ignored): returns the composite matching
    with dots summed along strings, and the number of closed loops formed."""
    if lower.target != upper.source:
        raise ValueError(f"cannot stack {format_word(upper.source)} on {format_word(lower.target)}")
    lo, up = Strands.of(lower), Strands.of(upper)
    # nodes: ("L", pt) and ("U", pt); middle points identify L-top k with U-bottom k
    def other(node):
        layer, pt = node
        mate = (lo if layer == "L" else up).mate[pt]
        return (layer, mate)

    def across(node):
        layer, (side, k) = node
        if layer == "L" and side == TOP:
            return ("U", (BOTTOM, k))
        if layer == "U" and side == BOTTOM:
            return ("L", (TOP, k))
        return None

    def dots_of(node):
        layer, pt = node
        src = lo if layer == "L" else up
        return src.dots.get(pt, 0) + src.dots.get(src.mate[pt], 0)

    visited = set()
    mate = {}
    dots = {}
    ends = [("L", (BOTTOM, k)) for k in range(len(lo.bottom))] + [("U", (TOP, k)) for k in range(len(up.top))]
    for start in ends:
        if start in visited:
            continue
        node, total = start, 0
        while True:
            visited.add(node)
            total += dots_of(node)
            far = other(node)
            visited.add(far)
            nxt = across(far)
            if nxt is None:
                break
            node = nxt
        a, b = start[1], far[1]
        mate[a], mate[b] = b, a
        if total:
            dots[a] = total
    loops = 0
    for k in range(len(lower.target)):
        node = ("L", (TOP, k))
        if node in visited:
            continue
        loops += 1
        while node not in visited:
            visited.add(node)
            far = other(node)
            visited.add(far)
            node = across(far)
    st = Strands(lower.source, upper.target, mate, dots)
    return st.diagram(lower.bubbles + upper.bubbles), loops


def from_slices(sw: SliceWord) -> BasisDiagram:
    """Formal gluing of a slice word back into a single decorated matching."""
    cur = identity_diagram(sw.source)
    for left, gen, right in sw.slices:
        cur, loops = stack(cur, elementary(left, gen, right))
        if loops:
            raise SliceError("slice word closes a loop")
    return cur


# -- JSON -------------------------------------------------------------------


def diagram_to_json(d: BasisDiagram) -> dict:
    return {
        "source": format_word(d.source),
        "target": format_word(d.target),
        "pairs": [[{"side": a.side, "i": a.i}, {"side": b.side, "i": b.i}] for a, b in d.matching.pairs],
        "dots": {str(k): v for k, v in d.dots},
        "bubbles": list(d.bubbles),
    }


def diagram_from_json(obj: dict) -> BasisDiagram:
    src, tgt = parse_word(obj["source"]), parse_word(obj["target"])
    pairs = [(BoundaryPoint(a["side"], a["i"]), BoundaryPoint(b["side"], b["i"])) for a, b in obj["pairs"]]
    m = Matching.build(src, tgt, pairs)
    dots = [(BoundaryPoint.parse(k), v) for k, v in obj.get("dots", {}).items()]
    return BasisDiagram(m, tuple(dots), tuple(obj.get("bubbles", ())))
