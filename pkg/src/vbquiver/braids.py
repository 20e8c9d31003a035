"""Closed virtual braid diagrams, built directly without a planar drawing.

A braid word is a list of generators on ``strands`` strands: ``i`` is the
classical generator at positions i, i+1 (the strand moving right goes over),
``-i`` its inverse and ``("v", i)`` the virtual generator. Closing the braid
gives a diagram whose only virtual crossings are the ones in the word, so
these diagrams are a clean test bed for Reidemeister moves.
"""

from __future__ import annotations

from typing import Sequence, Union

from .diagram import ClassicalCrossing, DiagramError, VirtualCrossing, VirtualDiagram

Generator = Union[int, tuple]


def _position(g: Generator, strands: int) -> tuple[int, bool]:
    if isinstance(g, (tuple, list)):
        if len(g) != 2 or g[0] != "v":
            raise DiagramError(f"bad braid generator {g!r}")
        i, virtual = int(g[1]), True
    else:
        if g == 0:
            raise DiagramError("braid generator 0 does not exist")
        i, virtual = abs(int(g)), False
    if not 1 <= i < strands:
        raise DiagramError(f"generator {g!r} needs at least {i + 1} strands")
    return i - 1, virtual


def braid_diagram(word: Sequence[Generator], strands: int, name: str = "") -> VirtualDiagram:
    """The closure of a virtual braid word."""
    current = list(range(strands))
    fresh = strands
    raw = []
    for g in word:
        i, virtual = _position(g, strands)
        a, b = current[i], current[i + 1]  # a moves right, b moves left
        na, nb = fresh, fresh + 1
        fresh += 2
        if virtual:
            raw.append(("v", a, b, na, nb))
        elif g > 0:
            raw.append(("c", 1, b, a, nb, na))
        else:
            raw.append(("c", -1, a, b, na, nb))
        current[i], current[i + 1] = nb, na
    # closure: the top end at position j is the bottom strand j
    close = {current[j]: j for j in range(strands)}
    glue = lambda s: close.get(s, s)
    used = sorted({glue(s) for r in raw for s in r[1 if r[0] == "v" else 2:]} | set(range(strands)))
    index = {s: k for k, s in enumerate(used)}
    crossings = []
    for r in raw:
        slots = [index[glue(s)] for s in r[1 if r[0] == "v" else 2:]]
        crossings.append(VirtualCrossing(*slots) if r[0] == "v" else ClassicalCrossing(r[1], *slots))
    succ = {}
    for x in crossings:
        for p, q in x.strands():
            succ[p] = q
    seen: set[int] = set()
    components = []
    for s in range(len(used)):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        t = succ.get(s, s)
        while t != s:
            comp.append(t)
            seen.add(t)
            t = succ[t]
        components.append(tuple(comp))
    D = VirtualDiagram(len(used), tuple(components), tuple(crossings), name=name)
    D.meta["braid"] = {"strands": strands, "word": [list(g) if isinstance(g, tuple) else g for g in word]}
    return D


def word_from_json(word) -> list[Generator]:
    return [tuple(g) if isinstance(g, list) else g for g in word]
