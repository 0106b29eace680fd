"""Deterministic ASCII, TikZ and JSON renderings of diagrams and morphisms."""
from __future__ import annotations

import json
from typing import List, Union

from .diagrams import BasisDiagram, diagram_to_json, to_slices
from .engine import Morphism
from .words import UP, format_word

SCHEMA = "heis/1"
_TURN_UP = ("c", "c'")
_TURN_DOWN = ("d", "d'")


def _row(cells: dict) -> str:
    width = max(cells) + 1 if cells else 0
    return "".join(cells.get(k, " ") for k in range(width)).rstrip()


def _strands(word: str, skip=()) -> dict:
    return {2 * k: "|" for k in range(len(word)) if k not in skip}


def _shift(narrow: str, p: int, glyph: str) -> list:
    """Two rows moving the strands right of position ``p`` over a turnback."""
    if len(narrow) <= p:
        return []
    rows = []
    for offset in (3, 1):
        row = _strands(narrow[:p])
        row.update({2 * k + offset: glyph for k in range(p, len(narrow))})
        rows.append(row)
    return rows


def ascii_diagram(d: BasisDiagram) -> str:
    """Top boundary first.  ``^`` marks an upward strand leaving the top,
    ``v`` a downward strand leaving the bottom; ``u`` is a cup, ``n`` a cap and
    ``\\ /`` over ``/ \\`` a crossing."""
    sw = to_slices(d)
    lines = [_row({2 * k: "^" if ch == UP else "|" for k, ch in enumerate(d.target)})]
    word = d.target
    body = []
    for left, gen, right in reversed(sw.slices):
        p = len(left)
        if gen in _TURN_UP:
            below = left + right
            upper = _strands(word)
            lower = _strands(word, skip=(p, p + 1))
            lower[2 * p + 1] = "u"
            rows = [upper, lower] + _shift(below, p, "/")
        elif gen in _TURN_DOWN:
            below = left + ("ud" if gen == "d" else "du") + right
            upper = _strands(below, skip=(p, p + 1))
            upper[2 * p + 1] = "n"
            rows = _shift(word, p, "\\")[::-1] + [upper, _strands(below)]
        elif gen in ("x", "x'"):
            below = word
            lower = _strands(word)
            lower[2 * p] = "*"
            rows = [_strands(word), lower]
        else:
            below = left + word[p + 1] + word[p] + right
            upper = _strands(word, skip=(p, p + 1))
            upper.update({2 * p: "\\", 2 * p + 2: "/"})
            lower = _strands(below, skip=(p, p + 1))
            lower.update({2 * p: "/", 2 * p + 2: "\\"})
            rows = [upper, lower]
        body += [_row(r) for r in rows]
        word = below
    if not sw.slices:
        body.append(_row(_strands(word)))
    lines += body
    lines.append(_row({2 * k: "v" if ch != UP else "|" for k, ch in enumerate(d.source)}))
    header = f"{format_word(d.source)} -> {format_word(d.target)}"
    if not d.source and not d.target:
        return header + "\n(empty)"
    return "\n".join([header] + lines)


def tikz_diagram(d: BasisDiagram, scale: float = 0.6) -> str:
    """One ``tikzpicture``; every elementary slice is one unit of height."""
    sw = to_slices(d)
    height = max(len(sw.slices), 1)
    out = [f"\\begin{{tikzpicture}}[scale={scale}, baseline=(current bounding box.center)]"]
    pen = "thick, darkblue"
    word = d.source
    for y, (left, gen, right) in enumerate(sw.slices):
        p = len(left)
        if gen in _TURN_UP:
            above = left + ("du" if gen == "c" else "ud") + right
            for k in range(len(word)):
                x0, x1 = k, k + (2 if k >= p else 0)
                out.append(f"  \\draw[{pen}] ({x0},{y}) .. controls ({x0},{y + 0.5}) and ({x1},{y + 0.5}) .. ({x1},{y + 1});")
            out.append(f"  \\draw[{pen}] ({p},{y + 1}) .. controls ({p},{y + 0.4}) and ({p + 1},{y + 0.4}) .. ({p + 1},{y + 1});")
        elif gen in _TURN_DOWN:
            above = left + right
            for k in range(len(above)):
                x0, x1 = k + (2 if k >= p else 0), k
                out.append(f"  \\draw[{pen}] ({x0},{y}) .. controls ({x0},{y + 0.5}) and ({x1},{y + 0.5}) .. ({x1},{y + 1});")
            out.append(f"  \\draw[{pen}] ({p},{y}) .. controls ({p},{y + 0.6}) and ({p + 1},{y + 0.6}) .. ({p + 1},{y});")
        elif gen in ("x", "x'"):
            above = word
            for k in range(len(word)):
                out.append(f"  \\draw[{pen}] ({k},{y}) -- ({k},{y + 1});")
            out.append(f"  \\filldraw[darkblue] ({p},{y + 0.5}) circle (2pt);")
        else:
            above = left + word[p + 1] + word[p] + right
            for k in range(len(word)):
                x1 = p + 1 if k == p else p if k == p + 1 else k
                out.append(f"  \\draw[{pen}] ({k},{y}) .. controls ({k},{y + 0.5}) and ({x1},{y + 0.5}) .. ({x1},{y + 1});")
        word = above
    if not sw.slices:
        for k in range(len(word)):
            out.append(f"  \\draw[{pen}] ({k},0) -- ({k},1);")
    for k, ch in enumerate(d.target):
        if ch == UP:
            out.append(f"  \\draw[{pen}, ->] ({k},{height - 0.01}) -- ({k},{height});")
    for k, ch in enumerate(d.source):
        if ch != UP:
            out.append(f"  \\draw[{pen}, ->] ({k},0.01) -- ({k},0);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


def morphism_to_json(m: Morphism) -> dict:
    return {
        "schema": SCHEMA,
        "source": format_word(m.source),
        "target": format_word(m.target),
        "terms": [{"coeff": k, "diagram": diagram_to_json(d)} for d, k in m.items()],
    }


def dumps(obj) -> str:
    """Stable JSON text (sorted keys are not used: field order is part of the schema)."""
    return json.dumps(obj, indent=2, ensure_ascii=False)


def render(m: Union[Morphism, BasisDiagram], fmt: str = "ascii") -> str:
    if isinstance(m, BasisDiagram):
        m = Morphism.of(m)
    if fmt == "json":
        return dumps(morphism_to_json(m))
    if fmt not in ("ascii", "tikz"):
        raise ValueError(f"unknown format {fmt!r}")
    if m.is_zero():
        return f"0 : {format_word(m.source)} -> {format_word(m.target)}"
    draw = ascii_diagram if fmt == "ascii" else tikz_diagram
    blocks: List[str] = []
    for d, k in m.items():
        tag = f"% coefficient {k}" if fmt == "tikz" else f"coefficient {k}"
        blocks.append(tag + "\n" + draw(d))
    return "\n\n".join(blocks)
