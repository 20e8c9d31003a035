"""Virtual biquandle Boltzmann weights (phi at classical, psi at virtual crossings)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import AbelianGroup, StructureError, ValidationReport, Violation, VirtualBiquandle


@lru_cache(maxsize=None)
def pair_index(n: int) -> tuple[tuple[int, int], ...]:
    """Off-diagonal pairs (X x X minus the diagonal), 1-based, row-major."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


@lru_cache(maxsize=None)
def pair_position(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pair_index(n))}


Table = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class BoltzmannWeight:
    """A pair of tables phi, psi : X x X -> A.

    Entries are normalized group elements and the tables are indexed 0-based
    (``phi[x-1][y-1]`` is phi(x, y)).
    """

    group: AbelianGroup
    phi: Table
    psi: Table
    name: str = ""

    @classmethod
    def from_tables(cls, group: AbelianGroup, phi, psi, name: str = "") -> "BoltzmannWeight":
        phi_t = _normalize_table(group, phi, "phi")
        psi_t = _normalize_table(group, psi, "psi")
        if len(phi_t) != len(psi_t):
            raise StructureError("phi and psi tables have different sizes")
        return cls(group, phi_t, psi_t, name)

    @classmethod
    def from_covectors(cls, group: AbelianGroup, n: int, phi, psi, name: str = "") -> "BoltzmannWeight":
        return cls.from_tables(group, covector_to_table(group, n, phi), covector_to_table(group, n, psi), name)

    @classmethod
    def zero(cls, group: AbelianGroup, n: int) -> "BoltzmannWeight":
        z = [[group.zero] * n for _ in range(n)]
        return cls.from_tables(group, z, z, name="zero")

    @property
    def n(self) -> int:
        return len(self.phi)

    def phi_at(self, x: int, y: int):
        return self.phi[x - 1][y - 1]

    def psi_at(self, x: int, y: int):
        return self.psi[x - 1][y - 1]

    def strongly_compatible(self, X: VirtualBiquandle) -> bool:
        return is_strongly_compatible(X, self)


def _normalize_table(group: AbelianGroup, table, label: str) -> Table:
    rows = [list(r) for r in table]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise StructureError(f"{label} table is not square")
    return tuple(tuple(group.normalize(a) for a in r) for r in rows)


def covector_to_table(group: AbelianGroup, n: int, covector) -> list[list[tuple[int, ...]]]:
    """Place a length n(n-1) covector on the off-diagonal in pair order."""
    covector = list(covector)
    if len(covector) != n * (n - 1):
        raise StructureError(f"covector for n={n} must have length {n * (n - 1)}, got {len(covector)}")
    table = [[group.zero] * n for _ in range(n)]
    for (i, j), a in zip(pair_index(n), covector):
        table[i - 1][j - 1] = group.normalize(a)
    return table


def table_to_covector(group: AbelianGroup, table) -> list[tuple[int, ...]]:
    n = len(table)
    return [group.normalize(table[i - 1][j - 1]) for i, j in pair_index(n)]


def validate_boltzmann(X: VirtualBiquandle, W: BoltzmannWeight) -> ValidationReport:
    """Check the three cocycle conditions and the normalizations over all of X^3.

    Witnesses are 1-based. The conditions are, for all x, y, z:

        phi(x,y) + phi(y,z) + phi(x▽y, z▽̄y) - phi(x,z) - phi(y▽̄x, z▽̄x) - phi(x▽z, y▽z) = 0
        psi(x,y) + psi(y,z) + psi(vx, v⁻¹z) - psi(x,z) - psi(v⁻¹y, v⁻¹z) - psi(vx, vy) = 0
        phi(x,y) + psi(y,z) + psi(x▽y, v⁻¹z) - psi(x,z) - phi(vx, vy) - psi(y▽̄x, v⁻¹z) = 0
    """
    if W.n != X.n:
        raise StructureError(f"weight tables are {W.n}x{W.n} but the biquandle has {X.n} elements")
    A = W.group
    n, U, O, v, vi = X.n, X.under, X.over, X.v, X.v_inv
    P, S = W.phi, W.psi
    report = ValidationReport()
    bad = report.violations.append
    zero = A.zero

    def combo(plus, minus):
        return A.add(A.sum(plus), A.neg(A.sum(minus)))

    for x in range(n):
        if P[x][x] != zero:
            bad(Violation("phi-diagonal", (x + 1,)))
        if S[x][x] != zero:
            bad(Violation("psi-diagonal", (x + 1,)))
        for y in range(x + 1, n):
            if A.add(S[x][y], S[y][x]) != zero:
                bad(Violation("psi-skew", (x + 1, y + 1), f"psi({x + 1},{y + 1}) + psi({y + 1},{x + 1}) != 0"))

    for x, y, z in itertools.product(range(n), repeat=3):
        c1 = combo((P[x][y], P[y][z], P[U[x][y]][O[z][y]]), (P[x][z], P[O[y][x]][O[z][x]], P[U[x][z]][U[y][z]]))
        if c1 != zero:
            bad(Violation("i.i", (x + 1, y + 1, z + 1), f"residual {A.format(c1)}"))
        c2 = combo((S[x][y], S[y][z], S[v[x]][vi[z]]), (S[x][z], S[vi[y]][vi[z]], S[v[x]][v[y]]))
        if c2 != zero:
            bad(Violation("i.ii", (x + 1, y + 1, z + 1), f"residual {A.format(c2)}"))
        c3 = combo((P[x][y], S[y][z], S[U[x][y]][vi[z]]), (S[x][z], P[v[x]][v[y]], S[O[y][x]][vi[z]]))
        if c3 != zero:
            bad(Violation("i.iii", (x + 1, y + 1, z + 1), f"residual {A.format(c3)}"))
    return report


def is_strongly_compatible(X: VirtualBiquandle, W: BoltzmannWeight) -> bool:
    """phi(x, y) == phi(v(x), v(y)) for all x, y."""
    v = X.v
    return all(W.phi[x][y] == W.phi[v[x]][v[y]] for x in range(X.n) for y in range(X.n))
