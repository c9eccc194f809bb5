"""Finite racks stored as operation tables.

Elements are the integers ``1..n``; ``table[i-1][j-1] == k`` means
``x_k = x_i |> x_j``.  Every public function here speaks 1-based indices;
the cached 0-based arrays (``RackTable.op0`` / ``RackTable.inv0``) exist
for the inner loops of the labeling solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .report import MalformedInputError, Report


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _check_square(table: Sequence[Sequence[int]], what: str = "rack table") -> int:
    n = len(table)
    if n == 0:
        raise MalformedInputError(f"{what} is empty")
    for r, row in enumerate(table, 1):
        if len(row) != n:
            raise MalformedInputError(
                f"{what} is not square: row {r} has {len(row)} entries, expected {n}"
            )
        for c, v in enumerate(row, 1):
            if not isinstance(v, int) or not 1 <= v <= n:
                raise MalformedInputError(
                    f"{what} entry ({r},{c}) = {v!r} outside 1..{n}"
                )
    return n


def verify_rack(table: Sequence[Sequence[int]]) -> Report:
    """Check both rack axioms, collecting every violation.

    Raises :class:`MalformedInputError` for tables that are not square or
    have entries outside ``1..n``; axiom failures go into the report.
    """
    n = _check_square(table)
    t = [[v - 1 for v in row] for row in table]
    report = Report("rack")
    for j in range(n):
        col = {t[i][j] for i in range(n)}
        if len(col) != n:
            report.add(("column_not_permutation", j + 1))
    for i in range(n):
        ti = t[i]
        for j in range(n):
            tij = ti[j]
            tj = t[j]
            for k in range(n):
                if t[tij][k] != t[ti[k]][tj[k]]:
                    report.add(("self_distributivity", i + 1, j + 1, k + 1))
    return report


@dataclass(frozen=True)
class KinkPermutation:
    """The kink map x -> x |> x together with its order (the rack rank)."""

    perm: tuple[int, ...]
    order: int

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, len(self.perm) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.perm[start - 1]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.perm[x - 1]
            out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + "".join(map(str, c)) + ")" for c in cyc)

    def power(self, x: int, k: int) -> int:
        for _ in range(k % self.order):
            x = self.perm[x - 1]
        return x


@dataclass(frozen=True)
class RackTable:
    rows: tuple[tuple[int, ...], ...]
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        _check_square(rows)

    @classmethod
    def from_matrix(cls, matrix: Iterable[Iterable[int]], check: bool = True) -> "RackTable":
        """Build a rack from a 1-based operation matrix.

        With ``check`` (the default) the axioms are verified and a
        :class:`RackAxiomError` is raised listing the first few violations.
        """
        R = cls(tuple(tuple(r) for r in matrix))
        if check:
            rep = verify_rack(R.rows)
            if not rep.valid:
                raise RackAxiomError(rep)
        return R

    @property
    def n(self) -> int:
        return len(self.rows)

    def elements(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def op0(self) -> list[list[int]]:
        return [[v - 1 for v in row] for row in self.rows]

    @cached_property
    def inv0(self) -> list[list[int]]:
        n = self.n
        inv = [[-1] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                inv[self.op0[i][j]][j] = i
        return inv

    def op(self, i: int, j: int) -> int:
        """``x_i |> x_j``."""
        self._check_index(i)
        self._check_index(j)
        return self.rows[i - 1][j - 1]

    def inv_op(self, i: int, j: int) -> int:
        """``x_i |>^{-1} x_j``: the unique k with ``x_k |> x_j = x_i``."""
        self._check_index(i)
        self._check_index(j)
        return self.inv0[i - 1][j - 1] + 1

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"rack element {i} outside 1..{self.n}")

    @cached_property
    def kink(self) -> KinkPermutation:
        return kink_map(self)

    @property
    def rank(self) -> int:
        return self.kink.order

    def is_quandle(self) -> bool:
        return is_quandle(self)

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(map(str, r)) for r in self.rows]
        return "\n".join(lines) + "\n"


class RackAxiomError(ValueError):
    def __init__(self, report: Report):
        self.report = report
        super().__init__(f"not a rack: {report.summary()}")


def rack_op(R: RackTable, i: int, j: int) -> int:
    return R.op(i, j)


def rack_inv_op(R: RackTable, i: int, j: int) -> int:
    return R.inv_op(i, j)


def kink_map(R: RackTable) -> KinkPermutation:
    perm = tuple(R.rows[i][i] for i in range(R.n))
    order = 1
    seen: set[int] = set()
    for start in range(1, R.n + 1):
        if start in seen:
            continue
        length = 0
        x = start
        while True:
            seen.add(x)
            x = perm[x - 1]
            length += 1
            if x == start:
                break
        order = _lcm(order, length)
    return KinkPermutation(perm, order)


def is_quandle(R: RackTable) -> bool:
    return all(R.rows[i][i] == i + 1 for i in range(R.n))


def subrack_closure(R: RackTable, seed: Iterable[int]) -> frozenset[int]:
    """Smallest set containing ``seed`` closed under |> and its inverse."""
    closed = set(seed)
    if not closed:
        raise ValueError("subrack_closure needs a nonempty seed")
    for x in closed:
        R._check_index(x)
    frontier = list(closed)
    while frontier:
        new = []
        current = list(closed)
        for x in frontier:
            for y in current:
                for z in (R.op(x, y), R.op(y, x), R.inv_op(x, y), R.inv_op(y, x)):
                    if z not in closed:
                        closed.add(z)
                        new.append(z)
        frontier = new
    return frozenset(closed)


def _zm_index(v: int, m: int) -> int:
    """Residue mod m -> element index, with 0 represented by m."""
    r = v % m
    return m if r == 0 else r


def ts_rack(m: int, t: int, s: int) -> RackTable:
    """The (t,s)-rack ``x |> y = t x + s y`` on Z_m.

    Element ``k`` stands for the residue ``k mod m`` (so index ``m`` is 0).
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if gcd(t, m) != 1:
        raise ValueError(f"t={t} is not a unit mod {m}")
    if (s * s - (1 - t) * s) % m != 0:
        raise ValueError(f"s^2 != (1-t)s mod {m}: {s * s % m} != {(1 - t) * s % m}")
    rows = [
        [_zm_index(t * x + s * y, m) for y in range(1, m + 1)]
        for x in range(1, m + 1)
    ]
    return RackTable.from_matrix(rows)


def dihedral_quandle(m: int) -> RackTable:
    """``i |> j = 2j - i mod m`` on ``1..m``."""
    if m < 1:
        raise ValueError("order must be positive")
    rows = [
        [_zm_index(2 * j - i, m) for j in range(1, m + 1)]
        for i in range(1, m + 1)
    ]
    return RackTable.from_matrix(rows)


def trivial_rack(n: int, perm: Sequence[int] | None = None) -> RackTable:
    """Permutation rack ``x |> y = sigma(x)``; ``perm=None`` is the trivial quandle."""
    perm = list(perm) if perm is not None else list(range(1, n + 1))
    return RackTable.from_matrix([[perm[i]] * n for i in range(n)])
