"""Exact polynomials and the four quiver invariants (edge/path x characteristic/matrix).

MultiPoly is a sparse integer polynomial over the variables s, t, t1, t2, x,
y, z. Its canonical text form lists terms in graded-lexicographic descending
order with variables compared in that order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .algebra import StructureError
from .quiver import ColoringQuiver, edge_matrices

VARIABLES = ("s", "t", "t1", "t2", "x", "y", "z")
_VAR_INDEX = {v: i for i, v in enumerate(VARIABLES)}
DEFAULT_TRAIL_CAP = 16

Exps = tuple[int, ...]


class TrailCapError(RuntimeError):
    """The quiver has more edges than the trail enumeration cap allows."""


@dataclass(frozen=True)
class MultiPoly:
    terms: tuple[tuple[Exps, int], ...]

    @classmethod
    def from_dict(cls, terms: Mapping[Exps, int]) -> "MultiPoly":
        clean = {e: c for e, c in terms.items() if c}
        return cls(tuple(sorted(clean.items(), key=lambda ec: _order_key(ec[0]), reverse=True)))

    @classmethod
    def monomial(cls, coef: int = 1, **powers: int) -> "MultiPoly":
        e = [0] * len(VARIABLES)
        for name, k in powers.items():
            e[_VAR_INDEX[name]] = k
        return cls.from_dict({tuple(e): coef})

    @classmethod
    def constant(cls, c: int) -> "MultiPoly":
        return cls.monomial(c)

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls(())

    def as_dict(self) -> dict[Exps, int]:
        return dict(self.terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return MultiPoly.from_dict(out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly.from_dict({e: c * other for e, c in self.terms})
        out: dict[Exps, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly.from_dict(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, **powers: int) -> int:
        e = [0] * len(VARIABLES)
        for name, k in powers.items():
            e[_VAR_INDEX[name]] = k
        return self.as_dict().get(tuple(e), 0)

    def evaluate(self, **values: int) -> "MultiPoly":
        """Substitute integers for some variables."""
        out: dict[Exps, int] = {}
        for e, c in self.terms:
            e = list(e)
            for name, val in values.items():
                i = _VAR_INDEX[name]
                c *= val ** e[i]
                e[i] = 0
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return MultiPoly.from_dict(out)

    def rename(self, old: str, new: str) -> "MultiPoly":
        i, j = _VAR_INDEX[old], _VAR_INDEX[new]
        out: dict[Exps, int] = {}
        for e, c in self.terms:
            e = list(e)
            e[j] += e[i]
            e[i] = 0
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return MultiPoly.from_dict(out)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coef": c, "exps": {VARIABLES[i]: k for i, k in enumerate(e) if k}} for e, c in self.terms
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        out: dict[Exps, int] = {}
        for term in data["terms"]:
            e = [0] * len(VARIABLES)
            for name, k in term["exps"].items():
                e[_VAR_INDEX[name]] = k
            out[tuple(e)] = out.get(tuple(e), 0) + term["coef"]
        return cls.from_dict(out)

    def __str__(self) -> str:
        return poly_to_string(self)


def _order_key(e: Exps):
    return (sum(e), e)


def _monomial_text(e: Exps) -> str:
    parts = []
    for name, k in zip(VARIABLES, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "".join(parts)


Invariant = Union[MultiPoly, tuple[MultiPoly, MultiPoly]]


def poly_to_string(p: Invariant) -> str:
    if isinstance(p, tuple):
        return "(" + ", ".join(poly_to_string(q) for q in p) + ")"
    if p.is_zero():
        return "0"
    out = []
    for k, (e, c) in enumerate(p.terms):
        mono = _monomial_text(e)
        mag = abs(c)
        body = mono if mag == 1 and mono else f"{mag}{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def invariant_to_json(p: Invariant):
    if isinstance(p, tuple):
        return [q.to_json() for q in p]
    return p.to_json()


# ---------------------------------------------------------------------------
# matrices


def _square(M) -> list[list[int]]:
    rows = [list(r) for r in M]
    if any(len(r) != len(rows) for r in rows):
        raise StructureError("matrix is not square")
    return rows


def matmul(A, B) -> tuple[tuple[int, ...], ...]:
    # edge matrices are sparse, so skip zero entries rather than forming dot products
    width = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * width
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(tuple(acc))
    return tuple(out)


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def char_coefficients(M) -> list[int]:
    """Coefficients c_0..c_n of det(tI - M) = sum c_k t^k (Faddeev-LeVerrier, exact)."""
    A = _square(M)
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]  # M_0 = 0
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
        AM = [[sum(A[i][j] * Mk[j][l] for j in range(n)) for l in range(n)] for i in range(n)]
        Mk = [[AM[i][l] + (c if i == l else 0) for l in range(n)] for i in range(n)]
        tr = sum(sum(A[i][j] * Mk[j][i] for j in range(n)) for i in range(n))
        c, rem = divmod(-tr, k)
        assert rem == 0
        coeffs[n - k] = c
    return coeffs


def char_poly(M, var: str = "t") -> MultiPoly:
    out = MultiPoly.zero()
    for k, c in enumerate(char_coefficients(M)):
        out = out + MultiPoly.monomial(c, **({var: k} if k else {}))
    return out


def matrix_poly(M) -> MultiPoly:
    """sum of m_jk x^j y^k, rows and columns indexed from 0."""
    out: dict = {}
    for j, row in enumerate(_square(M)):
        for k, m in enumerate(row):
            if m:
                e = MultiPoly.monomial(1, x=j, y=k).terms[0][0]
                out[e] = out.get(e, 0) + m
    return MultiPoly.from_dict(out)


# ---------------------------------------------------------------------------
# trails


def max_trails(q: ColoringQuiver, cap: int = DEFAULT_TRAIL_CAP) -> list[tuple[int, ...]]:
    """All trails (no repeated edge) of the greatest length occurring in q, sorted."""
    m = len(q.edges)
    if m > cap:
        raise TrailCapError(f"quiver has {m} edges, above the trail enumeration cap of {cap}")
    out_edges: list[list[int]] = [[] for _ in q.vertices]
    for i, e in enumerate(q.edges):
        out_edges[e.source].append(i)
    best: list[tuple[int, ...]] = []
    best_len = 0
    path: list[int] = []
    used = [False] * m

    def dfs(v: int):
        nonlocal best, best_len
        extended = False
        for i in out_edges[v]:
            if not used[i]:
                extended = True
                used[i] = True
                path.append(i)
                dfs(q.edges[i].target)
                path.pop()
                used[i] = False
        if not extended and path:
            if len(path) > best_len:
                best_len, best = len(path), [tuple(path)]
            elif len(path) == best_len:
                best.append(tuple(path))

    for v in range(len(q.vertices)):
        dfs(v)
    return sorted(best)


def _trail_products(q: ColoringQuiver, cap: int) -> Counter:
    """(trail length, M_j) -> number of maximal trails with that product.

    Trails come sorted, so consecutive ones share prefixes whose partial
    products are kept on a stack instead of being recomputed.
    """
    mats = edge_matrices(q)
    one = identity(q.group.order)
    start = one if q.mode == "generic" else (one, one)

    def step(i, P):
        if q.mode == "generic":
            return matmul(mats[i], P)
        return matmul(mats[i][0], P[0]), matmul(mats[i][1], P[1])

    out: Counter = Counter()
    prev: tuple[int, ...] = ()
    stack = [start]  # stack[k] = product of the first k edges of prev
    for trail in max_trails(q, cap):
        k = 0
        while k < min(len(prev), len(trail)) and prev[k] == trail[k]:
            k += 1
        del stack[k + 1:]
        for i in trail[k:]:
            stack.append(step(i, stack[-1]))
        out[len(trail), stack[-1]] += 1
        prev = trail
    return out


def _sum(polys: Iterable[MultiPoly]) -> MultiPoly:
    total: Counter = Counter()
    for p in polys:
        for e, c in p.terms:
            total[e] += c
    return MultiPoly.from_dict(total)


def phi_edge_char(q: ColoringQuiver) -> Invariant:
    mats = edge_matrices(q)
    if q.mode == "generic":
        return _sum(char_poly(M) for M in mats)
    return _sum(char_poly(M[0], "t1") for M in mats), _sum(char_poly(M[1], "t2") for M in mats)


def phi_edge_matrix(q: ColoringQuiver) -> Invariant:
    mats = edge_matrices(q)
    if q.mode == "generic":
        return _sum(matrix_poly(M) for M in mats)
    return _sum(matrix_poly(M[0]) for M in mats), _sum(matrix_poly(M[1]) for M in mats)


def phi_path_char(q: ColoringQuiver, cap: int = DEFAULT_TRAIL_CAP) -> Invariant:
    terms = _trail_products(q, cap).items()
    if q.mode == "generic":
        return _sum(char_poly(P) * MultiPoly.monomial(n, s=k) for (k, P), n in terms)
    return (
        _sum(char_poly(P[0], "t1") * MultiPoly.monomial(n, s=k) for (k, P), n in terms),
        _sum(char_poly(P[1], "t2") * MultiPoly.monomial(n, s=k) for (k, P), n in terms),
    )


def phi_path_matrix(q: ColoringQuiver, cap: int = DEFAULT_TRAIL_CAP) -> Invariant:
    terms = _trail_products(q, cap).items()
    if q.mode == "generic":
        return _sum(matrix_poly(P) * MultiPoly.monomial(n, z=k) for (k, P), n in terms)
    return (
        _sum(matrix_poly(P[0]) * MultiPoly.monomial(n, z=k) for (k, P), n in terms),
        _sum(matrix_poly(P[1]) * MultiPoly.monomial(n, z=k) for (k, P), n in terms),
    )


KINDS = {
    "edge-char": phi_edge_char,
    "edge-matrix": phi_edge_matrix,
    "path-char": phi_path_char,
    "path-matrix": phi_path_matrix,
}


def compute_invariant(q: ColoringQuiver, kind: str, cap: int = DEFAULT_TRAIL_CAP) -> Invariant:
    if kind not in KINDS:
        raise ValueError(f"unknown invariant kind {kind!r}; choose from {', '.join(KINDS)}")
    fn = KINDS[kind]
    return fn(q, cap) if kind.startswith("path") else fn(q)


def parse_poly(text: str) -> MultiPoly:
    """Read the canonical text form back (also accepts unordered terms and '*')."""
    import re

    s = text.replace(" ", "").replace("*", "").replace("−", "-")
    if s == "0":
        return MultiPoly.zero()
    if s and s[0] not in "+-":
        s = "+" + s
    out: dict = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = re.match(r"(\d*)(.*)$", body)
        coef = int(m.group(1)) if m.group(1) else 1
        e = [0] * len(VARIABLES)
        rest = m.group(2)
        for name, k in re.findall(r"(t1|t2|[stxyz])(?:\^(\d+))?", rest):
            e[_VAR_INDEX[name]] += int(k) if k else 1
        if re.sub(r"(t1|t2|[stxyz])(\^\d+)?", "", rest):
            raise ValueError(f"cannot parse polynomial term {body!r}")
        out[tuple(e)] = out.get(tuple(e), 0) + (coef if sign == "+" else -coef)
    return MultiPoly.from_dict(out)


def parse_invariant(text: str) -> Invariant:
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        a, b = t[1:-1].split(",")
        return parse_poly(a), parse_poly(b)
    return parse_poly(t)

