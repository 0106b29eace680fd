"""Objects of the Heisenberg category: words in the letters ``u`` (up) and ``d`` (down).

A word is a plain ``str`` over ``{"u", "d"}``; the tensor unit is the empty
string and serializes as ``"1"``.
"""
from __future__ import annotations

import enum
import re
from typing import NamedTuple, Optional

UP = "u"
DOWN = "d"
UNIT = "1"

_WORD_RE = re.compile(r"^[ud]*$")


class Orientation(str, enum.Enum):
    UP = "u"
    DOWN = "d"

    def flip(self) -> "Orientation":
        return Orientation.DOWN if self is Orientation.UP else Orientation.UP


class Simple(NamedTuple):
    """The simple object ``u^ups d^downs``."""

    ups: int
    downs: int

    @property
    def word(self) -> str:
        return UP * self.ups + DOWN * self.downs

    def __str__(self) -> str:
        return f"S({self.ups},{self.downs})"


def parse_word(text: str) -> str:
    """Normalize user input to the internal word form.

    Accepts ``"1"`` or ``""`` for the unit, arrows, and the ``u``/``d`` alphabet.

    >>> parse_word("1")
    ''
    >>> parse_word("↓↑")
    'du'
    """
    text = text.strip().replace("↑", UP).replace("↓", DOWN)
    if text in ("", UNIT, "𝟙"):
        return ""
    if not _WORD_RE.match(text):
        raise ValueError(f"not a word over {{u,d}}: {text!r}")
    return text


def format_word(w: str) -> str:
    return w if w else UNIT


def tensor(a: str, b: str) -> str:
    return a + b


def dual_word(w: str) -> str:
    """Reverse ``w`` and flip every letter.

    >>> dual_word("udd")
    'uud'
    """
    return "".join(DOWN if ch == UP else UP for ch in reversed(w))


def as_simple(w: str) -> Optional[Simple]:
    """Return ``Simple(i, j)`` when ``w == u^i d^j``, otherwise ``None``."""
    if "du" in w:
        return None
    i = w.count(UP)
    return Simple(i, len(w) - i)


def net_level(w: str) -> int:
    """Number of ``u`` minus number of ``d``."""
    return 2 * w.count(UP) - len(w)


def all_words(max_len: int, min_len: int = 0):
    """Every word with ``min_len <= len <= max_len``, shortest first, lexicographic
    with ``u < d`` inside each length."""
    from itertools import product

    for n in range(min_len, max_len + 1):
        for letters in product((UP, DOWN), repeat=n):
            yield "".join(letters)
