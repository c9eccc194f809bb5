"""Random and exhaustive search for dynamical cocycles and X-module structures.

Random mode draws from Python's ``random.Random`` (MT19937) seeded with the
configured integer seed; that identity is recorded in :data:`GENERATOR` and
in the header of every file written by :func:`write_results`.  Candidates
are generated serially, so a seed fixes the whole output.

A cocycle candidate is a choice, for every ``(x, y, b)``, of the column
``a -> a ._{x,y} b`` as a permutation of the beads.  Exhaustive mode walks
these choices in lexicographic order (columns ordered by ``(x, y, b)``,
permutations in :func:`itertools.permutations` order) and prunes a branch
as soon as a fully determined instance of mixed distributivity fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from math import gcd
from pathlib import Path
from typing import NamedTuple, Sequence

from .cocycles import DynamicalCocycle, XModuleStructure, verify_cocycle, verify_n_reduced, verify_xmodule
from .corpus import CorpusEntry
from .invariants import dynamical_invariant
from .io import write_text
from .racks import RackTable

GENERATOR = "MT19937 (Python random.Random)"


@dataclass(frozen=True)
class SearchConfig:
    rack: RackTable
    k: int = 1  # bead count; the modulus for module searches
    seed: int = 0
    mode: str = "random"
    max_candidates: int = 1000
    require_n_reduced: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("bead count / modulus must be at least 1")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be at least 1")
        if self.mode not in ("random", "exhaustive"):
            raise ValueError(f"unknown search mode {self.mode!r}")

    @property
    def m(self) -> int:
        return self.k

    def metadata(self) -> dict:
        return {
            "generator": GENERATOR,
            "seed": self.seed,
            "mode": self.mode,
            "max_candidates": self.max_candidates,
            "require_n_reduced": self.require_n_reduced,
        }


class Found(NamedTuple):
    index: int  # candidate number: draw index, or lexicographic rank when exhaustive
    value: object  # DynamicalCocycle or XModuleStructure


def _column_keys(n: int, k: int) -> list[tuple[int, int, int]]:
    return list(product(range(n), range(n), range(k)))


def _assemble(rack: RackTable, k: int, columns: Sequence[Sequence[int]]) -> DynamicalCocycle:
    """``columns[i]`` (0-based values) is the column for the i-th ``(x, y, b)`` key."""
    n = rack.n
    blocks = [[[[0] * k for _ in range(k)] for _ in range(n)] for _ in range(n)]
    for (x, y, b), col in zip(_column_keys(n, k), columns):
        for a, v in enumerate(col):
            blocks[x][y][a][b] = v + 1
    return DynamicalCocycle(rack, k, blocks)


def _accept(cfg: SearchConfig, alpha: DynamicalCocycle) -> bool:
    if not verify_cocycle(cfg.rack, alpha).valid:
        return False
    return not cfg.require_n_reduced or verify_n_reduced(cfg.rack, alpha).valid


def random_cocycle_candidates(cfg: SearchConfig):
    """The seeded candidate stream; each candidate satisfies bijectivity by construction."""
    rng = random.Random(cfg.seed)
    n, k = cfg.rack.n, cfg.k
    for i in range(cfg.max_candidates):
        cols = []
        for _ in range(n * n * k):
            col = list(range(k))
            rng.shuffle(col)
            cols.append(col)
        yield i, _assemble(cfg.rack, k, cols)


def _exhaustive_cocycles(cfg: SearchConfig):
    R, k = cfg.rack, cfg.k
    n = R.n
    op = R.op0
    keys = _column_keys(n, k)
    pos = {key: i for i, key in enumerate(keys)}
    perms = list(permutations(range(k)))
    radix = len(perms)
    # each instance of mixed distributivity, indexed by the latest column it
    # certainly needs; the two value-dependent columns are looked up lazily
    fixed = [[] for _ in keys]
    for x, y, z, a, b, c in product(range(n), range(n), range(n), range(k), range(k), range(k)):
        need = max(pos[x, y, b], pos[y, z, c], pos[x, z, c])
        fixed[need].append((x, y, z, a, b, c))
    col: list = [None] * len(keys)

    def value(x, y, a, b):
        p = col[pos[x, y, b]]
        return None if p is None else p[a]

    def holds(inst) -> bool:
        x, y, z, a, b, c = inst
        ab = value(x, y, a, b)
        ac = value(x, z, a, c)
        bc = value(y, z, b, c)
        lhs = value(op[x][y], z, ab, c)
        rhs = value(op[x][z], op[y][z], ac, bc)
        return lhs is None or rhs is None or lhs == rhs

    def place(t: int) -> bool:
        # instances still waiting on a value-dependent column pass here; the
        # final verify_cocycle in search_cocycles settles them
        return all(holds(inst) for inst in fixed[t])

    def rec(t: int, index: int):
        if t == len(keys):
            yield index, [list(p) for p in col]
            return
        for pi, p in enumerate(perms):
            col[t] = p
            if place(t):
                yield from rec(t + 1, index * radix + pi)
        col[t] = None

    for index, cols in rec(0, 0):
        yield index, _assemble(R, k, cols)


def search_cocycles(cfg: SearchConfig) -> list[Found]:
    """Verified cocycles among the candidates, in candidate order.

    Random mode examines ``max_candidates`` draws.  Exhaustive mode walks
    the whole candidate space and stops after ``max_candidates`` results.
    """
    out = []
    if cfg.mode == "random":
        for i, alpha in random_cocycle_candidates(cfg):
            if _accept(cfg, alpha):
                out.append(Found(i, alpha))
        return out
    for i, alpha in _exhaustive_cocycles(cfg):
        if _accept(cfg, alpha):
            out.append(Found(i, alpha))
            if len(out) >= cfg.max_candidates:
                break
    return out


def units(m: int) -> list[int]:
    return [u for u in range(m) if gcd(u, m) == 1]


def _module(R: RackTable, m: int, flat: Sequence[int]) -> XModuleStructure:
    n = R.n
    T = [flat[i * n:(i + 1) * n] for i in range(n)]
    S = [flat[n * n + i * n: n * n + (i + 1) * n] for i in range(n)]
    return XModuleStructure(R, m, T, S)


def search_modules(cfg: SearchConfig) -> list[Found]:
    """Verified X-module structures over ``Z_m`` with ``m = cfg.k``.

    Candidates list T row-major, then S row-major; T entries are units.
    Exhaustive mode enumerates them lexicographically.
    """
    R, m = cfg.rack, cfg.k
    n2 = R.n * R.n
    U, Z = units(m), list(range(m))
    out = []
    if cfg.mode == "random":
        rng = random.Random(cfg.seed)
        for i in range(cfg.max_candidates):
            flat = [rng.choice(U) for _ in range(n2)] + [rng.choice(Z) for _ in range(n2)]
            mod = _module(R, m, flat)
            if verify_xmodule(R, mod).valid:
                out.append(Found(i, mod))
        return out
    for i, flat in enumerate(product(*([U] * n2 + [Z] * n2))):
        mod = _module(R, m, flat)
        if verify_xmodule(R, mod).valid:
            out.append(Found(i, mod))
            if len(out) >= cfg.max_candidates:
                break
    return out


def write_results(found: Sequence[Found], outdir, cfg: SearchConfig, kind: str = "cocycle") -> list[Path]:
    """One file per result, named by seed and candidate index."""
    suffix = ".coc" if kind == "cocycle" else ".mod"
    header = "".join(f"# {key}: {val}\n" for key, val in cfg.metadata().items())
    Path(outdir).mkdir(parents=True, exist_ok=True)
    paths = []
    for f in found:
        name = f"seed{cfg.seed}_cand{f.index}{suffix}"
        body = f"# candidate: {f.index}\n" + header + f.value.to_text()
        paths.append(write_text(Path(outdir) / name, body))
    return paths


class DistinguishingRow(NamedTuple):
    index: int
    classes: tuple  # ((value string, (link ids...)), ...) in order of first appearance
    separated: int


def partition(values: Sequence[tuple[str, str]]) -> tuple:
    """Group ``(link id, value)`` pairs by value, keeping first-appearance order."""
    groups: dict[str, list[str]] = {}
    for ident, val in values:
        groups.setdefault(val, []).append(ident)
    return tuple((val, tuple(ids)) for val, ids in groups.items())


def separated_pairs(classes) -> int:
    sizes = [len(ids) for _, ids in classes]
    total = sum(sizes)
    return (total * total - sum(s * s for s in sizes)) // 2


def distinguishing_report(
    cocycles: Sequence[DynamicalCocycle | Found], links: Sequence[CorpusEntry], R: RackTable
) -> list[DistinguishingRow]:
    """Partition of ``links`` by the enhanced invariant, one row per cocycle.

    Rows are sorted by separated-pair count (descending), then by candidate
    index.  Plain cocycles are indexed by their position in the input.
    """
    rows = []
    for pos, item in enumerate(cocycles):
        index, alpha = (item.index, item.value) if isinstance(item, Found) else (pos, item)
        vals = [(e.id, str(dynamical_invariant(e.diagram, R, alpha))) for e in links]
        classes = partition(vals)
        rows.append(DistinguishingRow(index, classes, separated_pairs(classes)))
    return sorted(rows, key=lambda r: (-r.separated, r.index))


def report_tsv(rows: Sequence[DistinguishingRow]) -> str:
    lines = ["candidate\tseparated\tclasses"]
    for r in rows:
        cls = " | ".join(f"{val}: {','.join(ids)}" for val, ids in r.classes)
        lines.append(f"{r.index}\t{r.separated}\t{cls}")
    return "\n".join(lines) + "\n"
