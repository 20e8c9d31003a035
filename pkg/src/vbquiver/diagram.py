"""Oriented virtual link diagrams as semiarcs joined at classical and virtual crossings.

A semiarc runs from the crossing where it is an output to the crossing where
it is an input. Components are listed as cyclic sequences of semiarcs in the
direction of orientation. A component without crossings is a single semiarc
that appears in no crossing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Union

from .algebra import StructureError


class DiagramError(StructureError):
    """A diagram that is not a consistent oriented virtual link diagram."""


@dataclass(frozen=True)
class ClassicalCrossing:
    sign: int
    under_in: int
    over_in: int
    under_out: int
    over_out: int

    def slots(self) -> dict[str, int]:
        return {"under_in": self.under_in, "over_in": self.over_in, "under_out": self.under_out, "over_out": self.over_out}

    def strands(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.under_in, self.under_out), (self.over_in, self.over_out)


@dataclass(frozen=True)
class VirtualCrossing:
    """``left`` is the strand entering from the left of the other strand's direction."""

    left_in: int
    right_in: int
    left_out: int
    right_out: int

    def slots(self) -> dict[str, int]:
        return {"left_in": self.left_in, "right_in": self.right_in, "left_out": self.left_out, "right_out": self.right_out}

    def strands(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.left_in, self.left_out), (self.right_in, self.right_out)


Crossing = Union[ClassicalCrossing, VirtualCrossing]


@dataclass(frozen=True)
class VirtualDiagram:
    semiarc_count: int
    components: tuple[tuple[int, ...], ...]
    crossings: tuple[Crossing, ...]
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        check_diagram(self)

    @property
    def classical(self) -> list[ClassicalCrossing]:
        return [c for c in self.crossings if isinstance(c, ClassicalCrossing)]

    @property
    def virtual(self) -> list[VirtualCrossing]:
        return [c for c in self.crossings if isinstance(c, VirtualCrossing)]

    def successor(self) -> dict[int, int]:
        """Semiarc -> the semiarc following it along its component."""
        nxt = {}
        for c in self.crossings:
            for a, b in c.strands():
                nxt[a] = b
        for comp in self.components:
            if len(comp) == 1 and comp[0] not in nxt:
                nxt[comp[0]] = comp[0]
        return nxt

    def component_of(self) -> dict[int, int]:
        return {s: k for k, comp in enumerate(self.components) for s in comp}

    def writhe(self) -> int:
        return sum(c.sign for c in self.classical)

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "semiarcs": self.semiarc_count, "components": [list(c) for c in self.components]}
        out["crossings"] = [_crossing_to_dict(c) for c in self.crossings]
        out.update({k: v for k, v in self.meta.items() if k not in out})
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _crossing_to_dict(c: Crossing) -> dict:
    if isinstance(c, ClassicalCrossing):
        return {"type": "classical", "sign": c.sign, **c.slots()}
    return {"type": "virtual", **c.slots()}


def check_diagram(D: VirtualDiagram) -> None:
    """Raise :class:`DiagramError` unless D is structurally valid."""
    n = D.semiarc_count
    if not isinstance(n, int) or n < 0:
        raise DiagramError(f"semiarcs must be a non-negative integer, got {n!r}")
    as_input: dict[int, str] = {}
    as_output: dict[int, str] = {}
    for k, c in enumerate(D.crossings):
        if isinstance(c, ClassicalCrossing) and c.sign not in (1, -1):
            raise DiagramError(f"crossings[{k}]: sign must be +1 or -1, got {c.sign!r}")
        for slot, s in c.slots().items():
            where = f"crossings[{k}].{slot}"
            if not isinstance(s, int) or not 0 <= s < n:
                raise DiagramError(f"{where}: semiarc {s!r} is outside 0..{n - 1}")
            book = as_input if slot.endswith("_in") else as_output
            if s in book:
                role = "input" if book is as_input else "output"
                raise DiagramError(f"{where}: semiarc {s} is used as {role} twice (also at {book[s]})")
            book[s] = where
    seen: dict[int, int] = {}
    for k, comp in enumerate(D.components):
        if not comp:
            raise DiagramError(f"components[{k}] is empty")
        for s in comp:
            if not isinstance(s, int) or not 0 <= s < n:
                raise DiagramError(f"components[{k}]: semiarc {s!r} is outside 0..{n - 1}")
            if s in seen:
                raise DiagramError(f"components[{k}]: semiarc {s} already belongs to components[{seen[s]}]")
            seen[s] = k
    for s in range(n):
        if s not in seen:
            raise DiagramError(f"semiarc {s} belongs to no component")
        if (s in as_input) != (s in as_output):
            missing = "output" if s in as_input else "input"
            raise DiagramError(f"semiarc {s} is dangling: never used as an {missing}")
        if s not in as_input:
            comp = D.components[seen[s]]
            if len(comp) != 1:
                raise DiagramError(f"semiarc {s} appears in no crossing but its component has {len(comp)} semiarcs")
    nxt = D.successor()
    for k, comp in enumerate(D.components):
        for i, s in enumerate(comp):
            expected = comp[(i + 1) % len(comp)]
            if nxt[s] != expected:
                raise DiagramError(f"components[{k}]: semiarc {s} is followed by {nxt[s]}, not {expected}")


def diagram_from_dict(data: dict) -> VirtualDiagram:
    if not isinstance(data, dict):
        raise DiagramError("diagram must be an object")
    try:
        n = data["semiarcs"]
        comps = tuple(tuple(c) for c in data["components"])
        raw = data.get("crossings", [])
    except KeyError as exc:
        raise DiagramError(f"diagram is missing field {exc.args[0]!r}") from None
    except TypeError:
        raise DiagramError("components must be a list of lists of semiarc ids") from None
    crossings = []
    for k, c in enumerate(raw):
        kind = c.get("type") if isinstance(c, dict) else None
        try:
            if kind == "classical":
                crossings.append(ClassicalCrossing(c["sign"], c["under_in"], c["over_in"], c["under_out"], c["over_out"]))
            elif kind == "virtual":
                crossings.append(VirtualCrossing(c["left_in"], c["right_in"], c["left_out"], c["right_out"]))
            else:
                raise DiagramError(f"crossings[{k}]: unknown crossing type {kind!r}")
        except KeyError as exc:
            raise DiagramError(f"crossings[{k}]: missing field {exc.args[0]!r}") from None
    known = {"name", "semiarcs", "components", "crossings"}
    meta = {k: v for k, v in data.items() if k not in known}
    return VirtualDiagram(n, comps, tuple(crossings), name=str(data.get("name", "")), meta=meta)


def parse_diagram(text: str) -> VirtualDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return diagram_from_dict(data)


def parse_knot_table(text: str) -> list[VirtualDiagram]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise DiagramError("a knot table must be a list of diagrams")
    out = []
    for k, item in enumerate(data):
        try:
            out.append(diagram_from_dict(item))
        except DiagramError as exc:
            raise DiagramError(f"table entry {k}: {exc}") from None
    return out


def reverse_orientation(D: VirtualDiagram, component: int) -> VirtualDiagram:
    """Reverse the orientation of one component."""
    if not 0 <= component < len(D.components):
        raise DiagramError(f"component index {component} out of range (diagram has {len(D.components)})")
    members = set(D.components[component])
    new = []
    for c in D.crossings:
        if isinstance(c, ClassicalCrossing):
            ru, ro = c.under_in in members, c.over_in in members
            ui, uo = (c.under_out, c.under_in) if ru else (c.under_in, c.under_out)
            oi, oo = (c.over_out, c.over_in) if ro else (c.over_in, c.over_out)
            sign = -c.sign if ru != ro else c.sign
            new.append(ClassicalCrossing(sign, ui, oi, uo, oo))
        else:
            rl, rr = c.left_in in members, c.right_in in members
            left = (c.left_out, c.left_in) if rl else (c.left_in, c.left_out)
            right = (c.right_out, c.right_in) if rr else (c.right_in, c.right_out)
            if rl != rr:
                left, right = right, left
            new.append(VirtualCrossing(left[0], right[0], left[1], right[1]))
    comps = list(D.components)
    comp = comps[component]
    comps[component] = (comp[0],) + tuple(reversed(comp[1:]))
    return replace(D, components=tuple(comps), crossings=tuple(new))


def reverse_all(D: VirtualDiagram) -> VirtualDiagram:
    for k in range(len(D.components)):
        D = reverse_orientation(D, k)
    return D


def unknot() -> VirtualDiagram:
    return VirtualDiagram(1, ((0,),), (), name="unknot")
