"""Signed Gauss codes and their realization as virtual diagrams.

Codes use the knot-table notation ``O1-O2-U1-U2-``: ``O``/``U`` for passing
over/under, the crossing label, then the crossing sign. Link components are
separated by whitespace; a lone ``o`` is a component without crossings.

A Gauss code fixes only the classical crossings. To obtain semiarcs and
virtual crossings the code is drawn in the plane: each classical crossing is a
small X at a random lattice point, consecutive passages are joined by
two-segment polylines through random waypoints, and every remaining transverse
intersection becomes a virtual crossing. Different drawings of the same code
differ by detour moves, so every invariant computed downstream is independent
of the drawing (the test suite checks this).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .diagram import ClassicalCrossing, DiagramError, VirtualCrossing, VirtualDiagram

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


@dataclass(frozen=True)
class Passage:
    label: int
    over: bool
    sign: int


def parse_gauss(code: str) -> list[list[Passage]]:
    components = []
    for chunk in code.split():
        if chunk == "o":
            components.append([])
            continue
        pos, comp = 0, []
        for m in _TOKEN.finditer(chunk):
            if m.start() != pos:
                raise DiagramError(f"cannot parse Gauss code {chunk!r} at offset {pos}")
            comp.append(Passage(int(m.group(2)), m.group(1) == "O", 1 if m.group(3) == "+" else -1))
            pos = m.end()
        if pos != len(chunk):
            raise DiagramError(f"cannot parse Gauss code {chunk!r} at offset {pos}")
        components.append(comp)
    if not components:
        raise DiagramError("empty Gauss code")
    seen: dict[int, list[Passage]] = {}
    for comp in components:
        for p in comp:
            seen.setdefault(p.label, []).append(p)
    for label, ps in seen.items():
        if len(ps) != 2 or {p.over for p in ps} != {True, False}:
            raise DiagramError(f"crossing {label} must appear exactly once over and once under")
        if ps[0].sign != ps[1].sign:
            raise DiagramError(f"crossing {label} has inconsistent signs")
    return components


def format_gauss(components: list[list[Passage]]) -> str:
    def one(comp):
        if not comp:
            return "o"
        return "".join(f"{'O' if p.over else 'U'}{p.label}{'+' if p.sign > 0 else '-'}" for p in comp)

    return " ".join(one(c) for c in components)


# ---------------------------------------------------------------------------
# planar realization


def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


class _Degenerate(Exception):
    pass


def _intersect(p1, p2, q1, q2):
    """Parameters (s, t) of a proper crossing of segments p1p2 and q1q2, else None."""
    if (
        max(p1[0], p2[0]) < min(q1[0], q2[0])
        or max(q1[0], q2[0]) < min(p1[0], p2[0])
        or max(p1[1], p2[1]) < min(q1[1], q2[1])
        or max(q1[1], q2[1]) < min(p1[1], p2[1])
    ):
        return None
    r, d = _sub(p2, p1), _sub(q2, q1)
    denom = _cross(r, d)
    qp = _sub(q1, p1)
    if denom == 0:
        if _cross(qp, r) == 0:
            raise _Degenerate
        return None
    sn, tn = _cross(qp, d), _cross(qp, r)
    if denom < 0:
        denom, sn, tn = -denom, -sn, -tn
    if 0 < sn < denom and 0 < tn < denom:
        return Fraction(sn, denom), Fraction(tn, denom)
    if 0 <= sn <= denom and 0 <= tn <= denom:
        return "touch"
    return None


def _random_params(components, rng: random.Random, span: int):
    labels = sorted({p.label for comp in components for p in comp})
    centre = {lab: (rng.randrange(span) * 4, rng.randrange(span) * 4) for lab in labels}
    waypoints = [[(rng.randrange(span * 4), rng.randrange(span * 4)) for _ in comp] for comp in components]
    return centre, waypoints


def _mutate(params, rng: random.Random, span: int):
    centre, waypoints = params
    centre = dict(centre)
    waypoints = [list(w) for w in waypoints]
    slots = [("c", lab) for lab in centre] + [("w", k, i) for k, w in enumerate(waypoints) for i in range(len(w))]
    pick = slots[rng.randrange(len(slots))]
    if pick[0] == "c":
        centre[pick[1]] = (rng.randrange(span) * 4, rng.randrange(span) * 4)
    else:
        waypoints[pick[1]][pick[2]] = (rng.randrange(span * 4), rng.randrange(span * 4))
    return centre, waypoints


def _layout(components, params):
    centre, waypoints = params
    if len(set(centre.values())) != len(centre):
        raise _Degenerate
    sign = {p.label: p.sign for comp in components for p in comp}

    def ports(lab, over):
        cx, cy = centre[lab]
        d = (1, 1) if over else ((-1, 1) if sign[lab] > 0 else (1, -1))
        return (cx - d[0], cy - d[1]), (cx + d[0], cy + d[1])

    # segments: (component, order key, start, end, kind, payload)
    segments = []
    for k, comp in enumerate(components):
        m = len(comp)
        for i, p in enumerate(comp):
            a, b = ports(p.label, p.over)
            segments.append((k, 3 * i, a, b, "gadget", p))
            nxt = comp[(i + 1) % m]
            c, _ = ports(nxt.label, nxt.over)
            w = waypoints[k][i]
            segments.append((k, 3 * i + 1, b, w, "edge", None))
            segments.append((k, 3 * i + 2, w, c, "edge", None))
    return segments


def _realize_once(components, params):
    segments = _layout(components, params)
    # events along each segment: (param, kind, id)
    events: dict[int, list] = {i: [] for i in range(len(segments))}
    for i, seg in enumerate(segments):
        if seg[4] == "gadget":
            events[i].append((Fraction(1, 2), "classical", seg[5]))
    points = set()
    virtual = []
    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            si, sj = segments[i], segments[j]
            if si[4] == "gadget" and sj[4] == "gadget" and si[5].label == sj[5].label:
                continue
            shared = {si[2], si[3]} & {sj[2], sj[3]}
            hit = _intersect(si[2], si[3], sj[2], sj[3])
            if hit is None:
                continue
            if hit == "touch":
                if shared and len(shared) == 1 and _adjacent(segments, i, j):
                    continue
                raise _Degenerate
            s, t = hit
            pt = (si[2][0] + s * (si[3][0] - si[2][0]), si[2][1] + s * (si[3][1] - si[2][1]))
            if pt in points:
                raise _Degenerate
            points.add(pt)
            di, dj = _sub(si[3], si[2]), _sub(sj[3], sj[2])
            left_is_i = _cross(di, dj) > 0
            vid = len(virtual)
            virtual.append(left_is_i)
            events[i].append((s, "virtual", (vid, "left" if left_is_i else "right")))
            events[j].append((t, "virtual", (vid, "right" if left_is_i else "left")))
    return segments, events, virtual


def _adjacent(segments, i, j) -> bool:
    si, sj = segments[i], segments[j]
    if si[0] != sj[0]:
        return False
    count = sum(1 for s in segments if s[0] == si[0])
    return abs(si[1] - sj[1]) == 1 or {si[1], sj[1]} == {0, count - 1}


def _assemble(components, segments, events, virtual, name: str) -> VirtualDiagram:
    # walk each component starting just after its first classical passage
    sequences = []
    for k, comp in enumerate(components):
        segs = sorted((s for s in range(len(segments)) if segments[s][0] == k), key=lambda s: segments[s][1])
        seq = []
        for s in segs:
            seq.extend(sorted(events[s], key=lambda e: e[0]))
        if comp:
            first = next(i for i, e in enumerate(seq) if e[1] == "classical")
            seq = seq[first:] + seq[:first]
        sequences.append(seq)

    semiarc = 0
    slot_in: dict = {}
    slot_out: dict = {}
    comps = []
    for seq in sequences:
        if not seq:
            comps.append((semiarc,))
            semiarc += 1
            continue
        ids = []
        m = len(seq)
        for i in range(m):
            s = semiarc + i
            ids.append(s)
            slot_out[_key(seq[i])] = s
            slot_in[_key(seq[(i + 1) % m])] = s
        semiarc += m
        comps.append(tuple(ids))

    crossings = []
    labels = sorted({p.label for comp in components for p in comp})
    sign = {p.label: p.sign for comp in components for p in comp}
    for lab in labels:
        crossings.append(
            ClassicalCrossing(
                sign[lab],
                slot_in[("c", lab, False)],
                slot_in[("c", lab, True)],
                slot_out[("c", lab, False)],
                slot_out[("c", lab, True)],
            )
        )
    for vid in range(len(virtual)):
        crossings.append(
            VirtualCrossing(
                slot_in[("v", vid, "left")],
                slot_in[("v", vid, "right")],
                slot_out[("v", vid, "left")],
                slot_out[("v", vid, "right")],
            )
        )
    return VirtualDiagram(semiarc, tuple(comps), tuple(crossings), name=name)


def _key(event):
    if event[1] == "classical":
        return ("c", event[2].label, event[2].over)
    return ("v",) + event[2]


def realize(
    code: str, name: str = "", seed: int = 0, tries: int = 16, span: int = 16, polish: int = 400
) -> VirtualDiagram:
    """Draw a Gauss code with few virtual crossings.

    ``tries`` random drawings are made, then the best is improved by ``polish``
    single-point moves that never increase the virtual crossing count.
    """
    components = parse_gauss(code)
    rng = random.Random(seed)
    best = None
    attempts = 0
    while attempts < tries or best is None:
        attempts += 1
        if attempts > tries + 1000:
            raise DiagramError(f"could not find a generic drawing of {code!r}")
        params = _random_params(components, rng, span)
        try:
            drawn = _realize_once(components, params)
        except _Degenerate:
            continue
        if best is None or len(drawn[2]) < len(best[1][2]):
            best = (params, drawn)
    if any(components):
        for _ in range(polish):
            params = _mutate(best[0], rng, span)
            try:
                drawn = _realize_once(components, params)
            except _Degenerate:
                continue
            if len(drawn[2]) <= len(best[1][2]):
                best = (params, drawn)
    D = _assemble(components, *best[1], name=name)
    D.meta["gauss"] = format_gauss(components)
    return D
