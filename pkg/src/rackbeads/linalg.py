"""Integer and Z_m matrices for the rack-module enhancement."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import gcd, prod
from typing import Mapping, Sequence

from .cocycles import XModuleStructure
from .diagram import LinkDiagram


@dataclass(frozen=True)
class ZmMatrix:
    rows: int
    cols: int
    m: int
    entries: tuple  # tuple of row tuples, residues in 0..m-1

    def __post_init__(self):
        ent = tuple(tuple(int(v) % self.m for v in r) for r in self.entries)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise ValueError(f"entries do not form a {self.rows} x {self.cols} matrix")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], m: int, cols: int | None = None) -> "ZmMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, m, tuple(map(tuple, rows)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.entries)
        return buf.getvalue()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def presentation_matrix(
    D: LinkDiagram, labeling: Sequence[int] | Mapping[int, int], module: XModuleStructure
) -> ZmMatrix:
    """Crossing relations of the bead module of one X-labeled diagram.

    Columns are the arcs of ``D`` (see :meth:`LinkDiagram.arcs`), rows are
    crossings followed by kinks.  ``labeling`` maps semi-arc id -> rack
    element; a sequence is read as ``labeling[id - 1]``.
    """
    lab = labeling if isinstance(labeling, Mapping) else {i + 1: v for i, v in enumerate(labeling)}
    arcs = D.arcs()
    col = {s: j for j, arc in enumerate(arcs) for s in arc}
    t, s, m = module.T, module.S, module.m
    rows = []
    for c in D.crossings:
        y = lab[c.over_in]
        if lab[c.over_out] != y:
            raise ValueError("labeling differs across an over-strand")
        row = [0] * len(arcs)
        if c.sign > 0:
            x = lab[c.under_in]
            row[col[c.under_in]] += t[x - 1][y - 1]
            row[col[c.over_in]] += s[x - 1][y - 1]
            row[col[c.under_out]] -= 1
        else:
            x = lab[c.under_out]
            row[col[c.under_out]] += t[x - 1][y - 1]
            row[col[c.over_in]] += s[x - 1][y - 1]
            row[col[c.under_in]] -= 1
        rows.append(row)
    for k in D.kinks:
        x = lab[k.inp]
        row = [0] * len(arcs)
        row[col[k.inp]] += t[x - 1][x - 1] + s[x - 1][x - 1]
        row[col[k.out]] -= 1
        rows.append(row)
    return ZmMatrix(len(rows), len(arcs), m, tuple(map(tuple, rows)))


def row_reduce_prime(A: ZmMatrix | Sequence[Sequence[int]], p: int | None = None) -> tuple[list[list[int]], int]:
    """Reduced row echelon form over the field Z_p, and the rank."""
    if isinstance(A, ZmMatrix):
        p = A.m if p is None else p
        M = A.tolist()
    else:
        M = [list(r) for r in A]
    if p is None or not _is_prime(p):
        raise ValueError(f"row_reduce_prime needs a prime modulus, got {p}")
    M = [[v % p for v in r] for r in M]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [v * inv % p for v in M[rank]]
        for r in range(nrows):
            if r != rank and M[r][c]:
                f = M[r][c]
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == nrows:
            break
    return M, rank


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(diag, U, V)`` with ``U @ A @ V`` diagonal, ``U`` and ``V``
    unimodular, ``diag`` the nonnegative diagonal (length ``min(rows, cols)``)
    and each entry dividing the next.
    """
    M = [list(map(int, r)) for r in A]
    nr = len(M)
    nc = len(M[0]) if M else 0
    U, V = _identity(nr), _identity(nc)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        M[dst] = [a + f * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in M:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(M[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if M[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, nr):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        done = False
            if done:
                # enforce divisibility of the remaining block by the pivot
                bad = next(
                    ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if M[i][j] % M[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(M[i][t]), i, t) for i in range(t, nr) if M[i][t]]
            cands += [(abs(M[t][j]), t, j) for j in range(t, nc) if M[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if M[t][t] < 0:
            M[t] = [-v for v in M[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    diag = [M[i][i] for i in range(min(nr, nc))]
    return diag, U, V


def count_kernel(A: ZmMatrix) -> int:
    """``|{v in Z_m^cols : A v = 0}|``."""
    m = A.m
    if m == 1:
        return 1
    if _is_prime(m):
        _, rank = row_reduce_prime(A, m) if A.rows else ([], 0)
        return m ** (A.cols - rank)
    diag, _, _ = smith_normal_form(A.entries) if A.rows and A.cols else ([], None, None)
    return prod(gcd(d, m) for d in diag) * m ** (A.cols - len(diag))


def kernel_vectors(A: ZmMatrix) -> list[tuple[int, ...]]:
    """Enumerate the solutions themselves (small matrices only)."""
    from itertools import product

    return [
        v
        for v in product(range(A.m), repeat=A.cols)
        if all(sum(a * b for a, b in zip(row, v)) % A.m == 0 for row in A.entries)
    ]
