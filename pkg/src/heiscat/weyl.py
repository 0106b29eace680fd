"""The integral Weyl algebra ``Z<x, D> / (Dx - xD - 1)`` and the K0 map.

Elements are kept in the normal form ``sum c_ij x^i D^j``.  Coefficients are
Python integers, so nothing overflows.

>>> normal_order([WeylWord("dx")])
WeylElement({(0, 0): 1, (1, 1): 1})
>>> str(k0("dduu"))
'x^2∂^2 + 4x∂ + 2'
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .words import UP, parse_word

X = "x"
D = "d"  # stands for the derivative ∂ in ASCII input


def _clean_letters(text: str) -> str:
    letters = text.replace("∂", D).replace(" ", "")
    if set(letters) - {X, D}:
        raise ValueError(f"Weyl word may only contain x and d/∂: {text!r}")
    return letters


@dataclass(frozen=True)
class WeylWord:
    letters: str
    coefficient: int = 1

    def __post_init__(self):
        object.__setattr__(self, "letters", _clean_letters(self.letters))


class WeylElement:
    """Normal-form element: a map ``(i, j) -> c`` for the monomial ``x^i ∂^j``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Tuple[int, int], int] = ()):
        self.coeffs: Dict[Tuple[int, int], int] = {k: v for k, v in sorted(dict(coeffs).items()) if v}

    @classmethod
    def one(cls) -> "WeylElement":
        return cls({(0, 0): 1})

    def __add__(self, other: "WeylElement") -> "WeylElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return WeylElement(out)

    def __neg__(self) -> "WeylElement":
        return WeylElement({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Product by concatenating monomials and re-normalizing."""
        words = []
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                words.append(WeylWord(X * i + D * j + X * k + D * l, a * b))
        return normal_order(words)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"WeylElement({self.coeffs})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = _power("x", i) + _power("∂", j)
            if not mono:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def apply(self, poly: Mapping[int, int]) -> Dict[int, int]:
        """Act on a polynomial ``{k: c}`` in ``t`` as a differential operator."""
        out: Dict[int, int] = {}
        for (i, j), c in self.coeffs.items():
            for k, v in apply_word(X * i + D * j, poly).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict:
        return {"coeffs": [{"i": i, "j": j, "c": c} for (i, j), c in self.coeffs.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> "WeylElement":
        return cls({(e["i"], e["j"]): e["c"] for e in obj["coeffs"]})


def _power(sym: str, n: int) -> str:
    return "" if n == 0 else sym if n == 1 else f"{sym}^{n}"


def normal_order(e: Iterable[Union[WeylWord, str]]) -> WeylElement:
    """Rewrite ``∂x -> x∂ + 1`` at the leftmost occurrence until nothing is left."""
    pending: Dict[str, int] = {}
    for w in e:
        if isinstance(w, str):
            w = WeylWord(w)
        pending[w.letters] = pending.get(w.letters, 0) + w.coefficient
    done: Dict[Tuple[int, int], int] = {}
    while pending:
        nxt: Dict[str, int] = {}
        for word, c in pending.items():
            if not c:
                continue
            k = word.find(D + X)
            if k < 0:
                key = (word.count(X), word.count(D))
                done[key] = done.get(key, 0) + c
                continue
            for w2 in (word[:k] + X + D + word[k + 2:], word[:k] + word[k + 2:]):
                nxt[w2] = nxt.get(w2, 0) + c
        pending = nxt
    return WeylElement(done)


def apply_word(letters: str, poly: Mapping[int, int]) -> Dict[int, int]:
    """Apply a word (rightmost letter first) to a polynomial in ``t``."""
    cur = {k: v for k, v in poly.items() if v}
    for ch in reversed(_clean_letters(letters)):
        if ch == X:
            cur = {k + 1: v for k, v in cur.items()}
        else:
            cur = {k - 1: k * v for k, v in cur.items() if k}
    return cur


def _letters_of(word: str) -> str:
    return "".join(X if ch == UP else D for ch in parse_word(word))


def k0(s: Union[str, Sequence[str]]) -> WeylElement:
    """Class of a word (or a list of words, read as a direct sum) with ``u -> x``, ``d -> ∂``."""
    words = [s] if isinstance(s, str) else list(s)
    return normal_order(WeylWord(_letters_of(w)) for w in words)


def iso_objects(a: Union[str, Sequence[str]], b: Union[str, Sequence[str]]) -> bool:
    return k0(a) == k0(b)


def multiplicities(s: Union[str, Sequence[str]]) -> Dict:
    """Simple multiplicities ``{Simple: n}`` read off the normal form."""
    from .words import Simple

    return {Simple(i, j): c for (i, j), c in k0(s).coeffs.items()}
