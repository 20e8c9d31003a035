"""Coloring quivers with integer edge matrices on the group ring of A.

Vertices are the colorings of a diagram; every endomorphism sigma in S gives
one edge per vertex, pointing to the coloring obtained by applying sigma to
each color. Each edge carries a matrix sending, for every weight in C, the
basis element of the source's Boltzmann value to that of the target's value.
Columns outside the source's values stay zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import VirtualBiquandle, endomorphism_witness
from .diagram import VirtualDiagram
from .homset import Coloring, boltzmann_value, crossing_vectors, find_colorings
from .homset import _evaluate
from .weights import BoltzmannWeight, is_strongly_compatible

Matrix = tuple[tuple[int, ...], ...]
MODES = ("auto", "generic", "strong")


class QuiverError(ValueError):
    """Invalid quiver data: a non-endomorphism in S, or an empty weight set."""


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    sigma: int


@dataclass(frozen=True)
class ColoringQuiver:
    vertices: tuple[Coloring, ...]
    edges: tuple[Edge, ...]
    S: tuple[tuple[int, ...], ...]
    C: tuple[BoltzmannWeight, ...]
    mode: str
    # Boltzmann values per vertex and weight: A-values (generic) or pairs (strong)
    values: tuple[tuple, ...] = field(repr=False)

    @property
    def group(self):
        return self.C[0].group


def build_quiver(
    D: VirtualDiagram,
    X: VirtualBiquandle,
    S: Sequence[Sequence[int]],
    C: Sequence[BoltzmannWeight],
    mode: str = "auto",
) -> ColoringQuiver:
    """Build the quiver.

    ``mode``: "auto" uses pairs iff every weight is strongly compatible,
    "generic" always sums, "strong" always keeps pairs (for reproducing
    computations that treat a non-compatible weight as compatible; pair
    values are then not guaranteed to be invariant).
    """
    if not C:
        raise QuiverError("the weight set C is empty")
    if not S:
        raise QuiverError("the endomorphism set S is empty")
    groups = {W.group for W in C}
    if len(groups) != 1:
        raise QuiverError("all weights in C must share one coefficient group")
    S = tuple(tuple(s) for s in S)
    for k, sigma in enumerate(S):
        bad = endomorphism_witness(X, sigma)
        if bad is not None:
            raise QuiverError(f"S[{k}] = {list(sigma)} is not an endomorphism: {bad}")
    if mode not in MODES:
        raise QuiverError(f"unknown mode {mode!r}; choose from {', '.join(MODES)}")
    strong = mode == "strong" or (mode == "auto" and all(is_strongly_compatible(X, W) for W in C))

    vertices = tuple(find_colorings(D, X))
    index = {c: i for i, c in enumerate(vertices)}
    edges = []
    for i, c in enumerate(vertices):
        for k, sigma in enumerate(S):
            image = tuple(sigma[a - 1] for a in c)
            edges.append(Edge(i, index[image], k))

    values = []
    for c in vertices:
        vec = crossing_vectors(D, X, c)
        if strong:
            values.append(tuple((_evaluate(W, W.phi, vec.classical), _evaluate(W, W.psi, vec.virtual)) for W in C))
        else:
            values.append(tuple(boltzmann_value(vec, W) for W in C))
    return ColoringQuiver(vertices, tuple(edges), S, tuple(C), "strong" if strong else "generic", tuple(values))


def _elementary_sum(size: int, entries) -> Matrix:
    m = [[0] * size for _ in range(size)]
    for row, col in entries:
        m[row][col] += 1
    return tuple(tuple(r) for r in m)


def edge_matrix(q: ColoringQuiver, e: Edge):
    """One |A| x |A| matrix (generic) or a (classical, virtual) pair (strong)."""
    A = q.group
    src, tgt = q.values[e.source], q.values[e.target]
    if q.mode == "generic":
        return _elementary_sum(A.order, [(A.rank(w2), A.rank(w1)) for w1, w2 in zip(src, tgt)])
    classical = _elementary_sum(A.order, [(A.rank(w2[0]), A.rank(w1[0])) for w1, w2 in zip(src, tgt)])
    virtual = _elementary_sum(A.order, [(A.rank(w2[1]), A.rank(w1[1])) for w1, w2 in zip(src, tgt)])
    return classical, virtual


def edge_matrices(q: ColoringQuiver) -> list:
    return [edge_matrix(q, e) for e in q.edges]


def distinguished_submodule(q: ColoringQuiver, vertex: int) -> set:
    """Generators of the values carried by a vertex: A-elements or (classical, virtual) pairs."""
    return set(q.values[vertex])


def _matrix_label(M) -> str:
    return ";".join(",".join(str(a) for a in row) for row in M)


def to_dot(q: ColoringQuiver, with_matrices: bool = False) -> str:
    lines = ["digraph quiver {"]
    for i, c in enumerate(q.vertices):
        lines.append(f'  v{i} [label="{",".join(map(str, c))}"];')
    for e in q.edges:
        label = f"s{e.sigma}"
        if with_matrices:
            M = edge_matrix(q, e)
            label += " " + (_matrix_label(M) if q.mode == "generic" else " | ".join(_matrix_label(m) for m in M))
        lines.append(f'  v{e.source} -> v{e.target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_dict(q: ColoringQuiver) -> dict:
    A = q.group

    def ser(value):
        return [A.serialize(x) for x in value] if q.mode == "strong" else A.serialize(value)

    return {
        "mode": q.mode,
        "vertices": [list(c) for c in q.vertices],
        "values": [[ser(w) for w in vals] for vals in q.values],
        "S": [list(s) for s in q.S],
        "edges": [{"source": e.source, "target": e.target, "sigma": e.sigma} for e in q.edges],
        "matrices": [
            [list(r) for r in M] if q.mode == "generic" else [[list(r) for r in m] for m in M]
            for M in edge_matrices(q)
        ],
    }


def quiver_to_json(q: ColoringQuiver) -> str:
    return json.dumps(quiver_to_dict(q), sort_keys=True)

