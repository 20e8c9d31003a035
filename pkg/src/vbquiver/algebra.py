"""Finite abelian groups and finite virtual biquandles given by operation tables.

Elements of a biquandle are ``1..n`` at every external boundary (constructors,
files, printed output) and ``0..n-1`` inside the stored tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd, prod
from typing import Iterable, Sequence


class StructureError(ValueError):
    """Malformed input: wrong shapes, out-of-range entries, bad lengths."""


class ParameterError(ValueError):
    """Constructor parameters outside the family's domain."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    message: str = ""

    def __str__(self) -> str:
        w = ", ".join(str(i) for i in self.witness)
        text = f"axiom {self.axiom} fails at ({w})"
        return f"{text}: {self.message}" if self.message else text


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def first(self, axiom: str) -> Violation | None:
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


# ---------------------------------------------------------------------------
# Abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n_1} x ... x Z_{n_r}, elements ranked in mixed radix (last factor fastest)."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise StructureError(f"group moduli must be positive integers, got {self.moduli!r}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls((n,))

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def is_cyclic_factor(self) -> bool:
        return len(self.moduli) == 1

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(e) for e in itertools.product(*(range(m) for m in self.moduli))]

    def rank(self, element) -> int:
        element = self.normalize(element)
        r = 0
        for a, m in zip(element, self.moduli):
            r = r * m + a
        return r

    def element(self, rank: int) -> tuple[int, ...]:
        if not 0 <= rank < self.order:
            raise StructureError(f"rank {rank} out of range for group of order {self.order}")
        out = []
        for m in reversed(self.moduli):
            rank, a = divmod(rank, m)
            out.append(a)
        return tuple(reversed(out))

    def normalize(self, element) -> tuple[int, ...]:
        """Accept an int (cyclic groups only) or a tuple and reduce it."""
        if isinstance(element, int):
            if not self.is_cyclic_factor:
                raise StructureError("integer group elements are only allowed for cyclic groups")
            element = (element,)
        element = tuple(int(a) for a in element)
        if len(element) != len(self.moduli):
            raise StructureError(f"element {element} has wrong length for moduli {self.moduli}")
        return tuple(a % m for a, m in zip(element, self.moduli))

    @property
    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.moduli)

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    def sum(self, items: Iterable) -> tuple[int, ...]:
        return reduce(self.add, items, self.zero)

    def serialize(self, element):
        element = self.normalize(element)
        return element[0] if self.is_cyclic_factor else list(element)

    def format(self, element) -> str:
        element = self.normalize(element)
        if self.is_cyclic_factor:
            return str(element[0])
        return "(" + ",".join(str(a) for a in element) + ")"


# ---------------------------------------------------------------------------
# Virtual biquandles


def _check_square(name: str, table, n: int) -> tuple[tuple[int, ...], ...]:
    rows = [list(r) for r in table]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise StructureError(f"{name} table must be {n}x{n}")
    for i, row in enumerate(rows):
        for j, val in enumerate(row):
            if not isinstance(val, int) or not 1 <= val <= n:
                raise StructureError(f"{name}[{i + 1}][{j + 1}] = {val!r} is outside 1..{n}")
    return tuple(tuple(v - 1 for v in r) for r in rows)


def _check_map(name: str, values, n: int) -> tuple[int, ...]:
    values = list(values)
    if len(values) != n:
        raise StructureError(f"{name} must have length {n}, got {len(values)}")
    for i, val in enumerate(values):
        if not isinstance(val, int) or not 1 <= val <= n:
            raise StructureError(f"{name}[{i + 1}] = {val!r} is outside 1..{n}")
    return tuple(v - 1 for v in values)


def _inverse_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True)
class VirtualBiquandle:
    """Operation tables of a finite virtual biquandle (stored 0-based).

    ``under[x][y]`` is x ▽ y, ``over[x][y]`` is x ▽̄ y and ``v[x]`` is v(x).
    Construct from 1-based tables with :meth:`from_tables`.
    """

    under: tuple[tuple[int, ...], ...]
    over: tuple[tuple[int, ...], ...]
    v: tuple[int, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_tables(cls, under, over, vmap, name: str = "") -> "VirtualBiquandle":
        n = len(list(vmap))
        if n < 1:
            raise StructureError("biquandle must have at least one element")
        u = _check_square("under", under, n)
        o = _check_square("over", over, n)
        v = _check_map("v", vmap, n)
        if len(set(v)) != n:
            raise StructureError("v is not a bijection")
        return cls(u, o, v, name)

    @property
    def n(self) -> int:
        return len(self.v)

    def tables(self) -> dict:
        """1-based tables, as in the biquandle file format."""
        return {
            "n": self.n,
            "under": [[a + 1 for a in row] for row in self.under],
            "over": [[a + 1 for a in row] for row in self.over],
            "v": [a + 1 for a in self.v],
        }

    @cached_property
    def v_inv(self) -> tuple[int, ...]:
        return _inverse_perm(self.v)

    def validate(self) -> ValidationReport:
        return _axiom_report(self)


def validate_virtual_biquandle(under, over, vmap) -> ValidationReport:
    """Check the virtual biquandle axioms on 1-based tables.

    Raises :class:`StructureError` for malformed tables; axiom failures are
    reported with witnesses (1-based) instead.
    """
    return _axiom_report(VirtualBiquandle.from_tables(under, over, vmap))


def _axiom_report(X: VirtualBiquandle) -> ValidationReport:
    n, U, O, v = X.n, X.under, X.over, X.v
    report = ValidationReport()
    bad = report.violations.append

    for x in range(n):
        if U[x][x] != O[x][x]:
            bad(Violation("i", (x + 1,), f"{x + 1}▽{x + 1}={U[x][x] + 1} but {x + 1}▽̄{x + 1}={O[x][x] + 1}"))

    # (ii): alpha_y(x) = x ▽̄ y, beta_y(x) = x ▽ y, S(x, y) = (alpha_x(y), beta_y(x))
    for y in range(n):
        for label, table in (("ii-alpha", O), ("ii-beta", U)):
            column = [table[x][y] for x in range(n)]
            if len(set(column)) != n:
                x1, x2 = _collision(column)
                bad(Violation(label, (x1 + 1, x2 + 1, y + 1), "column map is not injective"))
    images: dict[tuple[int, int], tuple[int, int]] = {}
    for x in range(n):
        for y in range(n):
            img = (O[y][x], U[x][y])
            if img in images:
                x0, y0 = images[img]
                bad(Violation("ii-S", (x0 + 1, y0 + 1, x + 1, y + 1), "sideways map is not injective"))
                break
            images[img] = (x, y)
        else:
            continue
        break

    for x, y, z in itertools.product(range(n), repeat=3):
        if U[U[x][y]][U[z][y]] != U[U[x][z]][O[y][z]]:
            bad(Violation("iii-1", (x + 1, y + 1, z + 1)))
        if O[U[x][y]][U[z][y]] != U[O[x][z]][O[y][z]]:
            bad(Violation("iii-2", (x + 1, y + 1, z + 1)))
        if O[O[x][y]][O[z][y]] != O[O[x][z]][U[y][z]]:
            bad(Violation("iii-3", (x + 1, y + 1, z + 1)))

    for x in range(n):
        for y in range(n):
            if v[U[x][y]] != U[v[x]][v[y]]:
                bad(Violation("iv-under", (x + 1, y + 1)))
            if v[O[x][y]] != O[v[x]][v[y]]:
                bad(Violation("iv-over", (x + 1, y + 1)))
    return report


def _collision(values: Sequence[int]) -> tuple[int, int]:
    seen: dict[int, int] = {}
    for i, val in enumerate(values):
        if val in seen:
            return seen[val], i
        seen[val] = i
    raise AssertionError("no collision")


# ---------------------------------------------------------------------------
# Constructors


def _is_unit(a: int, n: int) -> bool:
    return gcd(a % n, n) == 1


def make_alexander_vbq(n: int, t: int, s: int, a: int) -> VirtualBiquandle:
    """Z_n with x ▽ y = tx + (s-t)y, x ▽̄ y = sx and v(x) = ax."""
    if n < 1:
        raise ParameterError("modulus must be positive")
    for label, val in (("t", t), ("s", s), ("a", a)):
        if not _is_unit(val, n):
            raise ParameterError(f"{label}={val} is not a unit mod {n}")
    under = [[(t * x + (s - t) * y) % n + 1 for y in range(n)] for x in range(n)]
    over = [[(s * x) % n + 1 for _ in range(n)] for x in range(n)]
    vmap = [(a * x) % n + 1 for x in range(n)]
    return VirtualBiquandle.from_tables(under, over, vmap, name=f"alexander(n={n},t={t},s={s},a={a})")


def _group_structure(mult) -> tuple[int, list[int]]:
    """Return (identity, inverses) of a 1-based group table, or raise ParameterError."""
    n = len(mult)
    m = _check_square("mult", mult, n)
    ids = [e for e in range(n) if all(m[e][x] == x and m[x][e] == x for x in range(n))]
    if not ids:
        raise ParameterError("multiplication table has no identity")
    e = ids[0]
    inv = []
    for x in range(n):
        cands = [y for y in range(n) if m[x][y] == e and m[y][x] == e]
        if not cands:
            raise ParameterError(f"element {x + 1} has no inverse")
        inv.append(cands[0])
    for x, y, z in itertools.product(range(n), repeat=3):
        if m[m[x][y]][z] != m[x][m[y][z]]:
            raise ParameterError(f"multiplication is not associative at ({x + 1}, {y + 1}, {z + 1})")
    return e, inv


def make_group_vbq(mult) -> VirtualBiquandle:
    """Group G with x ▽ y = y⁻¹xy⁻¹, x ▽̄ y = x⁻¹, v(x) = x⁻¹.

    The tables are built for any group; whether they satisfy the axioms depends
    on G (check with :meth:`VirtualBiquandle.validate`).
    """
    _, inv = _group_structure(mult)
    m = [[a - 1 for a in row] for row in mult]
    n = len(m)
    under = [[m[m[inv[y]][x]][inv[y]] + 1 for y in range(n)] for x in range(n)]
    over = [[inv[x] + 1 for _ in range(n)] for x in range(n)]
    vmap = [inv[x] + 1 for x in range(n)]
    return VirtualBiquandle.from_tables(under, over, vmap, name="group")


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(i + j) % n + 1 for j in range(n)] for i in range(n)]


def symmetric_group_table(k: int) -> list[list[int]]:
    """Multiplication table of S_k (composition p∘q), elements in lexicographic order."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[i]] for i in range(k))] + 1 for q in perms] for p in perms]


# ---------------------------------------------------------------------------
# Endomorphisms


def validate_endomorphism(X: VirtualBiquandle, sigma: Sequence[int]) -> bool:
    """True iff the 1-based map ``sigma`` is a virtual biquandle endomorphism of X."""
    s = _check_map("sigma", sigma, X.n)
    return _endomorphism_witness(X, s) is None


def endomorphism_witness(X: VirtualBiquandle, sigma: Sequence[int]) -> tuple | None:
    """First 1-based witness where ``sigma`` breaks a homomorphism equation, else None."""
    s = _check_map("sigma", sigma, X.n)
    w = _endomorphism_witness(X, s)
    return None if w is None else (w[0],) + tuple(i + 1 for i in w[1:])


def _endomorphism_witness(X: VirtualBiquandle, s: Sequence[int]):
    U, O, v = X.under, X.over, X.v
    for x in range(X.n):
        if v[s[x]] != s[v[x]]:
            return ("v", x)
        for y in range(X.n):
            if s[U[x][y]] != U[s[x]][s[y]]:
                return ("under", x, y)
            if s[O[x][y]] != O[s[x]][s[y]]:
                return ("over", x, y)
    return None


DEFAULT_ENDOMORPHISM_CAP = 6


def enumerate_endomorphisms(X: VirtualBiquandle, cap: int = DEFAULT_ENDOMORPHISM_CAP) -> list[tuple[int, ...]]:
    """All endomorphisms as 1-based image tuples, in lexicographic order.

    Brute force over n^n maps; refuses when n exceeds ``cap``.
    """
    if X.n > cap:
        raise ParameterError(f"enumerating endomorphisms of a {X.n}-element biquandle needs cap >= {X.n} (cap is {cap})")
    out = []
    for s in itertools.product(range(X.n), repeat=X.n):
        if _endomorphism_witness(X, s) is None:
            out.append(tuple(i + 1 for i in s))
    return out


def compose(tau: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """1-based composite tau∘sigma."""
    return tuple(tau[s - 1] for s in sigma)
