"""Bead operations over a rack: dynamical cocycles, X-modules, 2-cocycles.

A dynamical cocycle on a bead set ``1..k`` over a rack ``X`` of size ``n``
is a family of operations ``a ._{x,y} b``.  It is stored as ``blocks[x][y]``
(a k x k table, all 1-based), matching the block-matrix layout where row
``(x-1)k + a`` and column ``(y-1)k + b`` hold ``a ._{x,y} b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd
from typing import Callable, Mapping, Sequence

from .racks import RackTable, _zm_index
from .report import MalformedInputError, Report


@dataclass(frozen=True)
class DynamicalCocycle:
    rack: RackTable
    k: int
    blocks: tuple  # blocks[x][y][a][b], all 1-based values, 0-based positions

    def __post_init__(self):
        blocks = tuple(
            tuple(tuple(tuple(int(v) for v in row) for row in blk) for blk in brow)
            for brow in self.blocks
        )
        object.__setattr__(self, "blocks", blocks)
        _check_blocks(self.rack.n, self.k, blocks)

    @classmethod
    def from_block_matrix(cls, rack: RackTable, matrix: Sequence[Sequence[int]]) -> "DynamicalCocycle":
        n = rack.n
        size = len(matrix)
        if size % n:
            raise MalformedInputError(
                f"block matrix has {size} rows, not a multiple of the rack size {n}"
            )
        k = size // n
        for r, row in enumerate(matrix, 1):
            if len(row) != size:
                raise MalformedInputError(f"block matrix row {r} has {len(row)} entries, expected {size}")
        blocks = tuple(
            tuple(
                tuple(
                    tuple(matrix[x * k + a][y * k + b] for b in range(k)) for a in range(k)
                )
                for y in range(n)
            )
            for x in range(n)
        )
        return cls(rack, k, blocks)

    def block_matrix(self) -> list[list[int]]:
        n, k = self.rack.n, self.k
        return [
            [self.blocks[r // k][c // k][r % k][c % k] for c in range(n * k)]
            for r in range(n * k)
        ]

    def to_text(self) -> str:
        lines = [f"{self.rack.n} {self.k}"]
        lines += [" ".join(map(str, row)) for row in self.block_matrix()]
        return "\n".join(lines) + "\n"

    @cached_property
    def op0(self) -> list:
        """0-based ``op0[x][y][a][b]``."""
        return [
            [[[v - 1 for v in row] for row in blk] for blk in brow] for brow in self.blocks
        ]

    @cached_property
    def inv0(self) -> list:
        """0-based ``inv0[x][y][c][b] = a`` with ``a ._{x,y} b = c`` (-1 if none)."""
        k = self.k
        out = []
        for brow in self.op0:
            orow = []
            for blk in brow:
                inv = [[-1] * k for _ in range(k)]
                for a in range(k):
                    for b in range(k):
                        inv[blk[a][b]][b] = a
                orow.append(inv)
            out.append(orow)
        return out

    def op(self, x: int, y: int, a: int, b: int) -> int:
        self._check(x, y, a, b)
        return self.blocks[x - 1][y - 1][a - 1][b - 1]

    def inv_op(self, x: int, y: int, c: int, b: int) -> int:
        self._check(x, y, c, b)
        a = self.inv0[x - 1][y - 1][c - 1][b - 1]
        if a < 0:
            raise ValueError(f"right translation by {b} under ({x},{y}) is not onto {c}")
        return a + 1

    def rho0(self, x0: int) -> list[int]:
        """0-based kink map ``a -> a ._{x,x} a`` for the 0-based element ``x0``."""
        blk = self.op0[x0][x0]
        return [blk[a][a] for a in range(self.k)]

    def _check(self, x, y, a, b):
        n, k = self.rack.n, self.k
        if not (1 <= x <= n and 1 <= y <= n):
            raise IndexError(f"rack index out of range 1..{n}")
        if not (1 <= a <= k and 1 <= b <= k):
            raise IndexError(f"bead index out of range 1..{k}")


def _check_blocks(n: int, k: int, blocks) -> None:
    if k < 1:
        raise MalformedInputError("bead set must be nonempty")
    if len(blocks) != n or any(len(brow) != n for brow in blocks):
        raise MalformedInputError(f"cocycle has the wrong number of blocks for a rack of size {n}")
    for x, brow in enumerate(blocks, 1):
        for y, blk in enumerate(brow, 1):
            if len(blk) != k or any(len(row) != k for row in blk):
                raise MalformedInputError(f"block ({x},{y}) is not {k} x {k}")
            for row in blk:
                for v in row:
                    if not 1 <= v <= k:
                        raise MalformedInputError(f"block ({x},{y}) entry {v} outside 1..{k}")


def bead_op(alpha: DynamicalCocycle, x: int, y: int, a: int, b: int) -> int:
    return alpha.op(x, y, a, b)


def bead_op_inverse(alpha: DynamicalCocycle, x: int, y: int, c: int, b: int) -> int:
    return alpha.inv_op(x, y, c, b)


def verify_cocycle(rack: RackTable, alpha: DynamicalCocycle | Sequence) -> Report:
    """Both dynamical-cocycle axioms, every violation listed.

    ``alpha`` may be a :class:`DynamicalCocycle` or a raw block matrix.
    """
    if not isinstance(alpha, DynamicalCocycle):
        alpha = DynamicalCocycle.from_block_matrix(rack, alpha)
    if alpha.rack.n != rack.n:
        raise MalformedInputError(
            f"cocycle is defined over a rack of size {alpha.rack.n}, not {rack.n}"
        )
    n, k = rack.n, alpha.k
    T = rack.op0
    A = alpha.op0
    report = Report("dynamical cocycle")
    for x in range(n):
        for y in range(n):
            blk = A[x][y]
            for b in range(k):
                if len({blk[a][b] for a in range(k)}) != k:
                    report.add(("not_bijective", x + 1, y + 1, b + 1))
    for x, y, z in product(range(n), repeat=3):
        xy, xz, yz = T[x][y], T[x][z], T[y][z]
        left_in, left_out = A[x][y], A[xy][z]
        right_in, right_out, beads = A[x][z], A[xz][yz], A[y][z]
        for a, b, c in product(range(k), repeat=3):
            if left_out[left_in[a][b]][c] != right_out[right_in[a][c]][beads[b][c]]:
                report.add(("mixed_distributivity", x + 1, y + 1, z + 1, a + 1, b + 1, c + 1))
    return report


def verify_n_reduced(rack: RackTable, alpha: DynamicalCocycle) -> Report:
    """Going once around the kink orbit of ``x`` must return every bead.

    The composite ``rho_{pi^{N-1} x} o ... o rho_{pi x} o rho_x`` is checked
    against the identity for every ``x``.
    """
    pi = rack.kink
    N = pi.order
    report = Report("N-reduced")
    for x in range(rack.n):
        for a in range(alpha.k):
            bead, lab = a, x
            for _ in range(N):
                bead = alpha.op0[lab][lab][bead][bead]
                lab = pi.perm[lab] - 1
            if bead != a:
                report.add(("orbit_not_identity", x + 1, a + 1))
    return report


def trivial_cocycle(rack: RackTable, k: int) -> DynamicalCocycle:
    blk = tuple(tuple(a for _ in range(k)) for a in range(1, k + 1))
    return DynamicalCocycle(rack, k, tuple(tuple(blk for _ in range(rack.n)) for _ in range(rack.n)))


# ---------------------------------------------------------------- X-modules


@dataclass(frozen=True)
class XModuleStructure:
    """Coefficients ``t_{x,y}`` and ``s_{x,y}`` in Z_m, stored as residues."""

    rack: RackTable
    m: int
    T: tuple
    S: tuple

    def __post_init__(self):
        n = self.rack.n
        if self.m < 1:
            raise MalformedInputError("modulus must be positive")
        for nm in ("T", "S"):
            tab = getattr(self, nm)
            if len(tab) != n or any(len(r) != n for r in tab):
                raise MalformedInputError(f"{nm} must be {n} x {n}")
            object.__setattr__(
                self, nm, tuple(tuple(int(v) % self.m for v in r) for r in tab)
            )

    @classmethod
    def from_block_matrix(cls, rack: RackTable, m: int, matrix: Sequence[Sequence[int]]):
        """``[T | S]``: each row holds a row of T followed by a row of S."""
        n = rack.n
        if len(matrix) != n or any(len(r) != 2 * n for r in matrix):
            raise MalformedInputError(f"module matrix must be {n} x {2 * n}")
        return cls(rack, m, tuple(r[:n] for r in matrix), tuple(r[n:] for r in matrix))

    def block_matrix(self) -> list[list[int]]:
        return [list(t) + list(s) for t, s in zip(self.T, self.S)]

    def to_text(self) -> str:
        lines = [f"{self.rack.n} {self.m}"]
        lines += [" ".join(map(str, row)) for row in self.block_matrix()]
        return "\n".join(lines) + "\n"


def verify_xmodule(rack: RackTable, T, S=None, m: int | None = None) -> Report:
    """Units check plus the four relator families of the rack algebra.

    Called either as ``verify_xmodule(rack, module)`` or with explicit
    ``T``, ``S`` and ``m``.  The second relator is checked in the form
    ``t_{x|>y,z} s_{x,y} = s_{x|>z,y|>z} t_{y,z}``, which is what the bead
    rule ``a ._{x,y} b = t a + s b`` needs in order to be a dynamical cocycle.
    """
    if isinstance(T, XModuleStructure):
        mod = T
    else:
        mod = XModuleStructure(rack, m, tuple(map(tuple, T)), tuple(map(tuple, S)))
    n, m = rack.n, mod.m
    t, s = mod.T, mod.S
    op = rack.op0
    report = Report("X-module")
    for x, y in product(range(n), repeat=2):
        if gcd(t[x][y], m) != 1:
            report.add(("t_not_unit", x + 1, y + 1))
    for x, y, z in product(range(n), repeat=3):
        xy, xz, yz = op[x][y], op[x][z], op[y][z]
        if (t[xy][z] * t[x][y] - t[xz][yz] * t[x][z]) % m:
            report.add(("relator_tt", x + 1, y + 1, z + 1))
        if (t[xy][z] * s[x][y] - s[xz][yz] * t[y][z]) % m:
            report.add(("relator_ts", x + 1, y + 1, z + 1))
        if (s[xy][z] - s[xz][yz] * s[y][z] - t[xz][yz] * s[x][z]) % m:
            report.add(("relator_ss", x + 1, y + 1, z + 1))
    pi = rack.kink
    for x in range(n):
        prod_ = 1
        lab = x
        for _ in range(pi.order):
            prod_ = prod_ * (t[lab][lab] + s[lab][lab]) % m
            lab = pi.perm[lab] - 1
        if (1 - prod_) % m:
            report.add(("relator_kink", x + 1))
    return report


def cocycle_from_module(rack: RackTable, module: XModuleStructure, check: bool = True) -> DynamicalCocycle:
    """Beads in Z_m (index m is 0) with ``a ._{x,y} b = t_{x,y} a + s_{x,y} b``."""
    if check:
        rep = verify_xmodule(rack, module)
        if not rep.valid:
            raise ValueError(f"invalid X-module: {rep.summary()}")
    n, m = rack.n, module.m
    blocks = tuple(
        tuple(
            tuple(
                tuple(
                    _zm_index(module.T[x][y] * a + module.S[x][y] * b, m)
                    for b in range(1, m + 1)
                )
                for a in range(1, m + 1)
            )
            for y in range(n)
        )
        for x in range(n)
    )
    return DynamicalCocycle(rack, m, blocks)


def extension_rack(rack: RackTable, alpha: DynamicalCocycle, check: bool = True) -> RackTable:
    """Rack on pairs ``(x, a)`` numbered ``(x-1)k + a``:
    ``(x,a) |> (y,b) = (x |> y, a ._{x,y} b)``."""
    if check:
        rep = verify_cocycle(rack, alpha)
        if not rep.valid:
            raise ValueError(f"invalid dynamical cocycle: {rep.summary()}")
    n, k = rack.n, alpha.k
    rows = []
    for x in range(n):
        for a in range(k):
            row = []
            for y in range(n):
                for b in range(k):
                    row.append(rack.op0[x][y] * k + alpha.op0[x][y][a][b] + 1)
            rows.append(row)
    return RackTable.from_matrix(rows, check=False)


# ---------------------------------------------------------------- 2-cocycles


@dataclass(frozen=True)
class TwoCocycle:
    phi: tuple

    def __post_init__(self):
        n = len(self.phi)
        if n == 0 or any(len(r) != n for r in self.phi):
            raise MalformedInputError("2-cocycle table must be square and nonempty")
        object.__setattr__(self, "phi", tuple(tuple(int(v) for v in r) for r in self.phi))

    def __call__(self, x: int, y: int) -> int:
        return self.phi[x - 1][y - 1]

    def to_text(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.phi) + "\n"


def coboundary(f: Callable | Mapping, rack: RackTable, n: int) -> dict[tuple[int, ...], int]:
    """Pointwise ``delta^n f`` on ``X^{n+1}`` (1-based tuples).

    ``(delta f)(x_1..x_{n+1}) = sum_{k=2}^{n+1} (-1)^k [f(.., x_k omitted, ..)
    - f(x_1|>x_k, .., x_{k-1}|>x_k, x_{k+1}, .., x_{n+1})]``.
    """
    if n < 1:
        raise ValueError("coboundary degree must be at least 1")
    ev = f if callable(f) else (lambda *xs: f[xs])
    out = {}
    for xs in product(rack.elements(), repeat=n + 1):
        total = 0
        for k in range(2, n + 2):
            xk = xs[k - 1]
            omitted = xs[: k - 1] + xs[k:]
            acted = tuple(rack.op(x, xk) for x in xs[: k - 1]) + xs[k:]
            total += (-1) ** k * (ev(*omitted) - ev(*acted))
        out[xs] = total
    return out


def verify_2cocycle_reduced(rack: RackTable, phi: TwoCocycle | Sequence) -> Report:
    if not isinstance(phi, TwoCocycle):
        phi = TwoCocycle(tuple(map(tuple, phi)))
    if len(phi.phi) != rack.n:
        raise MalformedInputError(f"2-cocycle is {len(phi.phi)} x {len(phi.phi)}, rack has {rack.n} elements")
    report = Report("N-reduced 2-cocycle")
    d = coboundary(phi, rack, 2)
    for xs, v in d.items():
        if v:
            report.add(("coboundary_nonzero", *xs))
    pi = rack.kink
    for x in rack.elements():
        total = sum(
            phi(pi.power(x, k), pi.power(x, k + 1)) for k in range(1, pi.order + 1)
        )
        if total:
            report.add(("degenerate_sum_nonzero", x))
    return report
