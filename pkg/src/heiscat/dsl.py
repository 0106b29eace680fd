"""A small typed expression language for morphisms.

Atoms are the generators ``s t t' c c' d d' x`` (plus ``x'``, ``s'`` and the
alias ``tp`` for ``t'``) and identities ``id:WORD``.  ``.`` composes
vertically with the left operand on top, ``*`` places operands side by side
and binds tighter, an integer in front of a term scales it, and ``+``/``-``
form sums.

>>> str(parse("t . t'").type)
'du -> du'
>>> str(parse("c * id:u").type)
'u -> duu'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Tuple

import scipy.sparse as sp

from . import engine, oracle
from .diagrams import generator_type
from .words import format_word, parse_word

ATOMS = ("s", "t", "t'", "c", "c'", "d", "d'", "x", "x'", "s'")
ALIASES = {"tp": "t'"}
RESTRICTED_ATOMS = frozenset({"t", "t'", "c", "d'"})


class DSLError(Exception):
    pass


class ParseError(DSLError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class HeisTypeError(DSLError):
    pass


class NonRestrictedAtom(DSLError):
    pass


class Typing(NamedTuple):
    source: str
    target: str

    def __str__(self) -> str:
        return f"{format_word(self.source)} -> {format_word(self.target)}"


class Expr:
    @cached_property
    def type(self) -> Typing:
        return self._infer()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Expr):
    name: str
    word: str = ""  # only for "id"

    def _infer(self) -> Typing:
        if self.name == "id":
            return Typing(self.word, self.word)
        return Typing(*generator_type(self.name))


@dataclass(frozen=True)
class Compose(Expr):
    top: Expr
    bottom: Expr

    def _infer(self) -> Typing:
        lo, hi = self.bottom.type, self.top.type
        if lo.target != hi.source:
            raise HeisTypeError(f"cannot compose: {to_text(self.top)} expects {format_word(hi.source)} "
                                f"but {to_text(self.bottom)} produces {format_word(lo.target)}")
        return Typing(lo.source, hi.target)


@dataclass(frozen=True)
class Tensor(Expr):
    left: Expr
    right: Expr

    def _infer(self) -> Typing:
        a, b = self.left.type, self.right.type
        return Typing(a.source + b.source, a.target + b.target)


@dataclass(frozen=True)
class Scale(Expr):
    k: int
    inner: Expr

    def _infer(self) -> Typing:
        return self.inner.type


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr
    negate: bool = False  # ``left - right``

    def _infer(self) -> Typing:
        a, b = self.left.type, self.right.type
        if a != b:
            raise HeisTypeError(f"cannot add {a} and {b}")
        return a


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(id:[ud1↑↓𝟙]*)|([a-z]+'?)|(\d+)|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex)
        ident, name, num, sym = m.groups()
        if ident is not None:
            toks.append(("id", ident[3:], start))
        elif name is not None:
            toks.append(("name", name, start))
        elif num is not None:
            toks.append(("int", num, start))
        else:
            toks.append(("sym", sym, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, sym: str):
        kind, val, pos = self.take()
        if (kind, val) != ("sym", sym):
            raise ParseError(f"expected {sym!r}, found {val or 'end of input'!r}", pos)

    def sum(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            e = Add(e, self.term(), op == "-")
        return e

    def term(self) -> Expr:
        kind, val, pos = self.peek()
        sign = 1
        if (kind, val) == ("sym", "-"):
            self.take()
            sign = -1
            kind, val, pos = self.peek()
            if kind != "int":
                return Scale(-1, self.vcomp())
        if kind == "int":
            self.take()
            return Scale(sign * int(val), self.vcomp())
        return self.vcomp()

    def vcomp(self) -> Expr:
        e = self.hcomp()
        while self.peek()[:2] == ("sym", "."):
            self.take()
            e = Compose(e, self.hcomp())
        return e

    def hcomp(self) -> Expr:
        e = self.factor()
        while self.peek()[:2] == ("sym", "*"):
            self.take()
            e = Tensor(e, self.factor())
        return e

    def factor(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "id":
            try:
                return Atom("id", parse_word(val))
            except ValueError:
                raise ParseError(f"bad word {val!r}", pos) from None
        if kind == "name":
            name = ALIASES.get(val, val)
            if name not in ATOMS:
                raise ParseError(f"unknown atom {val!r}", pos)
            return Atom(name)
        if (kind, val) == ("sym", "("):
            e = self.sum()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str) -> Expr:
    """Parse and type-check an expression."""
    p = _Parser(text)
    e = p.sum()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    _ = e.type
    return e


# -- printing ----------------------------------------------------------------

_LEVEL = {Add: 0, Scale: 1, Compose: 2, Tensor: 3, Atom: 4}


def to_text(e: Expr) -> str:
    def wrap(child: Expr, minimum: int) -> str:
        text = to_text(child)
        return f"({text})" if _LEVEL[type(child)] < minimum else text

    if isinstance(e, Atom):
        return f"id:{format_word(e.word)}" if e.name == "id" else e.name
    if isinstance(e, Compose):
        return f"{wrap(e.top, 2)} . {wrap(e.bottom, 3)}"
    if isinstance(e, Tensor):
        return f"{wrap(e.left, 3)} * {wrap(e.right, 4)}"
    if isinstance(e, Scale):
        return f"{e.k} {wrap(e.inner, 2)}"
    op = "-" if e.negate else "+"
    return f"{wrap(e.left, 0)} {op} {wrap(e.right, 1)}"


# -- evaluation --------------------------------------------------------------


def evaluate(e: Expr) -> engine.Morphism:
    """Normal form in the restricted engine."""
    if isinstance(e, Atom):
        if e.name == "id":
            return engine.Morphism.identity(e.word)
        if e.name not in RESTRICTED_ATOMS:
            raise NonRestrictedAtom(f"atom {e.name} lies outside the semisimple subcategory; use --mode oracle")
        return engine.Morphism.generator(e.name)
    if isinstance(e, Compose):
        return engine.compose(evaluate(e.top), evaluate(e.bottom))
    if isinstance(e, Tensor):
        return engine.hcompose(evaluate(e.left), evaluate(e.right))
    if isinstance(e, Scale):
        return e.k * evaluate(e.inner)
    a, b = evaluate(e.left), evaluate(e.right)
    return a - b if e.negate else a + b


def slice_terms(e: Expr) -> List[Tuple[int, Tuple[tuple, ...]]]:
    """Expand into a formal sum of slice words (bottom slice first)."""
    if isinstance(e, Atom):
        return [(1, ())] if e.name == "id" else [(1, (("", e.name, ""),))]
    if isinstance(e, Compose):
        return [(a * b, lo + hi) for b, lo in slice_terms(e.bottom) for a, hi in slice_terms(e.top)]
    if isinstance(e, Tensor):
        ls, rt = e.left.type.source, e.right.type.target
        out = []
        for a, left in slice_terms(e.left):
            for b, right in slice_terms(e.right):
                lifted = tuple((ls + l, g, r) for l, g, r in right)
                lifted += tuple((l, g, r + rt) for l, g, r in left)
                out.append((a * b, lifted))
        return out
    if isinstance(e, Scale):
        return [(e.k * k, s) for k, s in slice_terms(e.inner)]
    sign = -1 if e.negate else 1
    return slice_terms(e.left) + [(sign * k, s) for k, s in slice_terms(e.right)]


def evaluate_oracle(e: Expr, max_level: int) -> Dict[int, sp.csr_matrix]:
    """Matrices of the expression at levels ``0..max_level``."""
    src, tgt = e.type
    out = {}
    for n in range(max_level + 1):
        shape = (oracle.eval_object(tgt, n).dim, oracle.eval_object(src, n).dim)
        mat = sp.csr_matrix(shape, dtype="int64")
        for k, slices in slice_terms(e):
            mat = mat + k * oracle.eval_slices(src, slices, n)
        mat = mat.tocsr()
        mat.eliminate_zeros()
        out[n] = mat
    return out
