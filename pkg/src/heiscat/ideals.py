"""Thick tensor ideals of the bounded derived category of the semisimple part.

Every object there is a split complex, so it is recorded as the multiset of
simples sitting in each degree.  Ideals are named by canonical descriptors;
:func:`closure` recomputes them from scratch by saturating generators under
summands and one-sided tensoring, and is the check on the descriptors.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from . import weyl
from .words import Simple, all_words, parse_word


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class SplitObject:
    degrees: Tuple[Tuple[int, Tuple[Tuple[Simple, int], ...]], ...] = ()

    @classmethod
    def build(cls, degrees: Dict[int, Counter]) -> "SplitObject":
        rows = []
        for deg in sorted(degrees):
            items = tuple(sorted((Simple(*s), n) for s, n in degrees[deg].items() if n))
            if items:
                rows.append((deg, items))
        return cls(tuple(rows))

    @classmethod
    def zero(cls) -> "SplitObject":
        return cls(())

    def simples(self) -> FrozenSet[Simple]:
        return frozenset(s for _, items in self.degrees for s, _ in items)

    def is_zero(self) -> bool:
        return not self.degrees

    def as_dict(self) -> Dict[int, Dict[Simple, int]]:
        return {deg: dict(items) for deg, items in self.degrees}

    def __add__(self, other: "SplitObject") -> "SplitObject":
        acc: Dict[int, Counter] = {}
        for obj in (self, other):
            for deg, items in obj.degrees:
                acc.setdefault(deg, Counter()).update(dict(items))
        return SplitObject.build(acc)

    def to_json(self) -> dict:
        return {"degrees": [{"degree": deg, "simples": [{"ups": s.ups, "downs": s.downs, "mult": n} for s, n in items]}
                            for deg, items in self.degrees]}


def split(w: Union[str, Sequence[str], None], degree: int = 0) -> SplitObject:
    """The split complex with the simple summands of ``w`` in one degree.

    ``None`` or an empty list is the zero object.
    """
    if w is None or (not isinstance(w, str) and not w):
        return SplitObject.zero()
    mult = weyl.multiplicities(w)
    return SplitObject.build({degree: Counter(mult)})


@dataclass(frozen=True, order=True)
class IdealDescriptor:
    """``Zero``, ``Whole``, ``RightChain(i)`` (simples with at least ``i`` ups) or
    ``LeftChain(j)`` (simples with at least ``j`` downs)."""

    form: str
    index: int = 0

    def __post_init__(self):
        if self.form in ("RightChain", "LeftChain") and self.index == 0:
            object.__setattr__(self, "form", "Whole")
        if self.form in ("Zero", "Whole"):
            object.__setattr__(self, "index", 0)
        if self.form not in ("Zero", "Whole", "RightChain", "LeftChain") or self.index < 0:
            raise ValueError(f"bad ideal descriptor {self.form}({self.index})")

    def contains(self, s: Simple) -> bool:
        if self.form == "Zero":
            return False
        if self.form == "Whole":
            return True
        return (s.ups if self.form == "RightChain" else s.downs) >= self.index

    def mirror(self) -> "IdealDescriptor":
        flip = {"RightChain": "LeftChain", "LeftChain": "RightChain"}
        return IdealDescriptor(flip.get(self.form, self.form), self.index)

    def __str__(self) -> str:
        return self.form if self.form in ("Zero", "Whole") else f"{self.form}({self.index})"

    @classmethod
    def parse(cls, text: str) -> "IdealDescriptor":
        text = text.strip()
        if "(" in text:
            form, rest = text.split("(", 1)
            return cls(form, int(rest.rstrip(")")))
        return cls(text)


ZERO = IdealDescriptor("Zero")
WHOLE = IdealDescriptor("Whole")


def _as_split(x) -> SplitObject:
    return x if isinstance(x, SplitObject) else split(x)


def ideal_generated(side: Side, gens: Iterable) -> IdealDescriptor:
    simples = set()
    for g in gens:
        simples |= _as_split(g).simples()
    if not simples:
        return ZERO
    side = Side(side)
    if side is Side.TWO_SIDED:
        return WHOLE
    if side is Side.RIGHT:
        return IdealDescriptor("RightChain", min(s.ups for s in simples))
    return IdealDescriptor("LeftChain", min(s.downs for s in simples))


def ideal_member(side: Side, gen_ideal: IdealDescriptor, x) -> bool:
    return all(gen_ideal.contains(s) for s in _as_split(x).simples())


def _box(L: int) -> List[Simple]:
    return [Simple(a, b) for a in range(L + 1) for b in range(L + 1)]


def includes(big: IdealDescriptor, small: IdealDescriptor, L: int) -> bool:
    """Containment of simple sets restricted to ``a, b <= L``."""
    return all(big.contains(s) for s in _box(L) if small.contains(s))


def enumerate_ideals(side: Side, L: int) -> List[IdealDescriptor]:
    """Descriptors generated by single words of length ``<= L`` plus ``Zero``,
    ordered from largest to smallest."""
    found = {ZERO}
    for w in all_words(L):
        found.add(ideal_generated(side, [w]))
    members = {d: frozenset(s for s in _box(L) if d.contains(s)) for d in found}
    chain = sorted(found, key=lambda d: -len(members[d]))
    for big, small in zip(chain, chain[1:]):
        if not members[small] < members[big]:
            raise AssertionError(f"{big} and {small} are not strictly nested")
    return chain


# -- brute-force closure ------------------------------------------------------


def _summands(word: str) -> List[Simple]:
    from .engine import decompose_object

    mult, _, _ = decompose_object(word, with_matrices=False)
    return [s for s, n in mult.items() if n]


def closure(side: Side, gens: Iterable[str], L: int = 3, bound: Optional[int] = None, margin: Optional[int] = None) -> FrozenSet[Simple]:
    """Saturate the simple summands of ``gens`` under tensoring by words of
    length ``<= L`` on ``side``, keeping simples inside a working box of size
    ``bound + margin``; returns the part with ``a, b <= bound``."""
    side = Side(side)
    bound = L if bound is None else bound
    work = bound + (L if margin is None else margin)
    found = set()
    frontier = []
    for g in gens:
        for s in _summands(parse_word(g)):
            if s not in found:
                found.add(s)
                frontier.append(s)
    tensors = [w for w in all_words(L, 1)]
    while frontier:
        s = frontier.pop()
        images = []
        for y in tensors:
            if side in (Side.RIGHT, Side.TWO_SIDED):
                images.append(s.word + y)
            if side in (Side.LEFT, Side.TWO_SIDED):
                images.append(y + s.word)
        for w in images:
            for r in _summands(w):
                if r.ups <= work and r.downs <= work and r not in found:
                    found.add(r)
                    frontier.append(r)
    return frozenset(r for r in found if r.ups <= bound and r.downs <= bound)


# -- spectrum -----------------------------------------------------------------

POINT = "*"


def support(x) -> List[str]:
    """Support in the one-point spectrum: the point unless ``x`` is zero."""
    return [] if ideal_member(Side.TWO_SIDED, ZERO, x) else [POINT]


def spc_report(sample_length: int) -> dict:
    words = list(all_words(sample_length))
    primes = [d for d in enumerate_ideals(Side.TWO_SIDED, sample_length) if d != WHOLE]
    classes = {w: weyl.k0(w) for w in words}
    completely_prime = all(classes[a] * classes[b] for a, b in product(words, repeat=2))
    samples: List[Optional[str]] = list(words) + [None]

    def tensor(a, b):
        return None if a is None or b is None else a + b

    tpp = True
    pairs = 0
    for a, b in product(samples, repeat=2):
        pairs += 1
        lhs = set(support(split(tensor(a, b))))
        if lhs != set(support(split(a))) & set(support(split(b))):
            tpp = False
    return {
        "primes": [str(p) for p in primes],
        "completely_prime": completely_prime,
        "supports": [{"object": w or "1", "support": support(split(w))} for w in words],
        "support_of_zero": support(SplitObject.zero()),
        "tensor_product_property": tpp,
        "pairs_checked": pairs,
    }


def quasi_support_points(L: int) -> Tuple[List[IdealDescriptor], Dict[int, List[IdealDescriptor]]]:
    """Proper right ideals at truncation ``L`` (each checked meet-prime in the
    chain) and the opens ``supp(u^n)`` for ``n < L``."""
    lattice = enumerate_ideals(Side.RIGHT, L)
    points = [d for d in lattice if d != WHOLE]

    def meet(a, b):
        return b if includes(a, b, L) else a

    for p in points:
        for a, b in product(lattice, repeat=2):
            if includes(p, meet(a, b), L) and not (includes(p, a, L) or includes(p, b, L)):
                raise AssertionError(f"{p} is not meet-prime")
    opens = {n: [p for p in points if not ideal_member(Side.RIGHT, p, split("u" * n))] for n in range(L)}
    return points, opens
