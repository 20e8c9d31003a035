"""Colorings of a diagram by a virtual biquandle, and Boltzmann weight values.

Crossing rules are read sideways. Turn a crossing so both strands point up;
the colors on its left-hand side determine those on the right.

* classical crossing: if the over strand carries x and the under strand y on
  the left, then on the right they carry x ▽ y and y ▽̄ x. For a positive
  crossing the left-hand colors sit on (over-in, under-out), for a negative
  one on (over-out, under-in);
* virtual crossing: both strands pick up v when passing from left to right,
  so left-out = v(left-in) and right-in = v(right-out).

Weight bookkeeping: a classical crossing contributes sign * phi(x, y) for its
left-hand pair (x, y); a virtual crossing contributes psi(left-in, right-out),
again its left-hand pair. Pairs on the diagonal contribute nothing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .algebra import VirtualBiquandle
from .diagram import ClassicalCrossing, VirtualDiagram
from .weights import BoltzmannWeight, pair_index, pair_position

Coloring = tuple[int, ...]


class ColoringError(ValueError):
    """A coloring that violates a crossing rule."""


class ModeError(ValueError):
    """Pair-valued weights requested for a weight that is not strongly compatible."""


def check_coloring(D: VirtualDiagram, X: VirtualBiquandle, colors) -> str | None:
    """Return a description of the first violated crossing rule, or None."""
    c = [a - 1 for a in colors]
    if len(c) != D.semiarc_count or any(not 0 <= a < X.n for a in c):
        return "coloring has the wrong length or out-of-range colors"
    U, O, v = X.under, X.over, X.v
    for k, x in enumerate(D.crossings):
        if isinstance(x, ClassicalCrossing):
            (a, b), (p, q) = (c[s] for s in _west(x)), _east(x)
            ok = c[p] == U[a][b] and c[q] == O[b][a]
        else:
            ok = c[x.left_out] == v[c[x.left_in]] and c[x.right_in] == v[c[x.right_out]]
        if not ok:
            return f"crossing {k} violates its coloring rule"
    return None


def _west(x: ClassicalCrossing) -> tuple[int, int]:
    """(over, under) semiarcs on the left-hand side."""
    return (x.over_in, x.under_out) if x.sign > 0 else (x.over_out, x.under_in)


def _east(x: ClassicalCrossing) -> tuple[int, int]:
    return (x.over_out, x.under_in) if x.sign > 0 else (x.over_in, x.under_out)


class _Search:
    """Backtracking with propagation: every rule is bijective on pairs (classical)
    or on single strands (virtual), so either side of a crossing determines the other."""

    def __init__(self, D: VirtualDiagram, X: VirtualBiquandle):
        self.D, self.X = D, X
        U, O = X.under, X.over
        n = X.n
        self.pos = {(a, b): (U[a][b], O[b][a]) for a in range(n) for b in range(n)}
        self.pos_inv = _invert(self.pos)
        self.incident: list[list[int]] = [[] for _ in range(D.semiarc_count)]
        for k, x in enumerate(D.crossings):
            for s in set(x.slots().values()):
                self.incident[s].append(k)
        self.order = [s for comp in D.components for s in comp]

    def _rule(self, k, col, assign) -> bool:
        x = self.D.crossings[k]
        X = self.X
        if isinstance(x, ClassicalCrossing):
            ins, outs, fwd, back = _west(x), _east(x), self.pos, self.pos_inv
            a, b = col[ins[0]], col[ins[1]]
            if a >= 0 and b >= 0:
                target = fwd.get((a, b))
                return target is not None and assign(outs[0], target[0]) and assign(outs[1], target[1])
            a, b = col[outs[0]], col[outs[1]]
            if a >= 0 and b >= 0:
                source = back.get((a, b))
                if source is None:
                    return False
                return assign(ins[0], source[0]) and assign(ins[1], source[1])
            return True
        ok = True
        if col[x.left_in] >= 0:
            ok = assign(x.left_out, X.v[col[x.left_in]])
        elif col[x.left_out] >= 0:
            ok = assign(x.left_in, X.v_inv[col[x.left_out]])
        if not ok:
            return False
        if col[x.right_out] >= 0:
            ok = assign(x.right_in, X.v[col[x.right_out]])
        elif col[x.right_in] >= 0:
            ok = assign(x.right_out, X.v_inv[col[x.right_in]])
        return ok

    def run(self) -> list[Coloring]:
        col = [-1] * self.D.semiarc_count
        found: list[Coloring] = []

        def propagate(start: int, value: int, trail: list[int]) -> bool:
            stack: list[int] = []

            def assign(s, val):
                if col[s] == -1:
                    col[s] = val
                    trail.append(s)
                    stack.append(s)
                    return True
                return col[s] == val

            assign(start, value)
            while stack:
                s = stack.pop()
                for k in self.incident[s]:
                    if not self._rule(k, col, assign):
                        return False
            return True

        def recurse(i: int):
            while i < len(self.order) and col[self.order[i]] >= 0:
                i += 1
            if i == len(self.order):
                found.append(tuple(a + 1 for a in col))
                return
            for val in range(self.X.n):
                trail: list[int] = []
                if propagate(self.order[i], val, trail):
                    recurse(i + 1)
                for t in trail:
                    col[t] = -1

        recurse(0)
        return found


def _invert(mapping: dict) -> dict:
    inv: dict = {}
    for k, v in mapping.items():
        if v in inv:
            inv[v] = None
        else:
            inv[v] = k
    return {k: v for k, v in inv.items() if v is not None}


def find_colorings(D: VirtualDiagram, X: VirtualBiquandle) -> list[Coloring]:
    """All X-colorings of D as 1-based color tuples, in lexicographic order."""
    return list(_colorings(D, X))


@lru_cache(maxsize=256)
def _colorings(D: VirtualDiagram, X: VirtualBiquandle) -> tuple[Coloring, ...]:
    found = _Search(D, X).run()
    verified = [c for c in found if check_coloring(D, X, c) is None]
    return tuple(sorted(set(verified)))


# ---------------------------------------------------------------------------
# crossing vectors and weights


@dataclass(frozen=True)
class CrossingVectors:
    """Integer vectors over the off-diagonal pairs, in :func:`pair_index` order."""

    classical: tuple[int, ...]
    virtual: tuple[int, ...]

    def nonzero(self, which: str) -> dict[tuple[int, int], int]:
        vec = getattr(self, which)
        n = _n_from_pairs(len(vec))
        return {p: a for p, a in zip(pair_index(n), vec) if a}


def _n_from_pairs(length: int) -> int:
    n = 1
    while n * (n - 1) < length:
        n += 1
    return n


def crossing_vectors(D: VirtualDiagram, X: VirtualBiquandle, coloring: Coloring) -> CrossingVectors:
    """Classical and virtual pair-count vectors of a 1-based coloring."""
    problem = check_coloring(D, X, coloring)
    if problem is not None:
        raise ColoringError(problem)
    n = X.n
    where = pair_position(n)
    cl = [0] * (n * (n - 1))
    vt = [0] * (n * (n - 1))
    c = coloring
    for x in D.crossings:
        if isinstance(x, ClassicalCrossing):
            p = tuple(c[s] for s in _west(x))
            if p[0] != p[1]:
                cl[where[p]] += x.sign
        else:
            p = (c[x.left_in], c[x.right_out])
            if p[0] != p[1]:
                vt[where[p]] += 1
    return CrossingVectors(tuple(cl), tuple(vt))


def _evaluate(W: BoltzmannWeight, table, vec):
    A = W.group
    n = W.n
    return A.sum(A.scale(k, table[i - 1][j - 1]) for (i, j), k in zip(pair_index(n), vec) if k)


def boltzmann_value(vectors: CrossingVectors, W: BoltzmannWeight):
    """phi(classical vector) + psi(virtual vector) as one group element."""
    A = W.group
    return A.add(_evaluate(W, W.phi, vectors.classical), _evaluate(W, W.psi, vectors.virtual))


def boltzmann_pair(vectors: CrossingVectors, W: BoltzmannWeight, X: VirtualBiquandle | None = None):
    """(phi(classical vector), psi(virtual vector)); needs a strongly compatible weight."""
    if X is not None:
        from .weights import is_strongly_compatible

        if not is_strongly_compatible(X, W):
            raise ModeError("pair-valued weight requires a strongly compatible weight")
    return _evaluate(W, W.phi, vectors.classical), _evaluate(W, W.psi, vectors.virtual)


def weight_multiset(D: VirtualDiagram, X: VirtualBiquandle, W: BoltzmannWeight, strong: bool = False) -> Counter:
    values = Counter()
    for c in find_colorings(D, X):
        vec = crossing_vectors(D, X, c)
        values[boltzmann_pair(vec, W, X) if strong else boltzmann_value(vec, W)] += 1
    return values
