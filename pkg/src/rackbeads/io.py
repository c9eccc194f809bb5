"""Reading and writing the plain-text data files.

All readers raise :class:`MalformedInputError` with a ``path:line:`` prefix
when the file is structurally broken.  Axiom checks are left to the
callers, which turn them into reports.

Formats (``#`` starts a comment everywhere):

* rack: ``n`` then ``n`` rows of ``n`` entries;
* dynamical cocycle: ``n k`` then the ``nk x nk`` block matrix;
* module: ``n m`` then ``n`` rows of ``2n`` entries (row of T, row of S);
* 2-cocycle: ``n`` rows of ``n`` integers;
* links: native (``.link``), PD (``.pd``) or Gauss (``.gauss``) text.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Sequence

from .codes import parse
from .cocycles import DynamicalCocycle, TwoCocycle, XModuleStructure
from .diagram import LinkDiagram
from .racks import RackTable
from .report import MalformedInputError

LINK_SUFFIXES = {".link": "native", ".pd": "pd", ".gauss": "gauss"}


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise MalformedInputError(f"{path}: cannot read ({e.strerror})") from None


def numeric_lines(text: str, path="<text>") -> list[tuple[int, list[int]]]:
    """Non-blank, non-comment lines as ``(line number, integers)``."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            out.append((lineno, [int(t) for t in line.split()]))
        except ValueError:
            raise MalformedInputError(f"{path}:{lineno}: expected integers, got {raw.strip()!r}") from None
    return out


def _header(lines, path, count: int, what: str) -> list[int]:
    if not lines:
        raise MalformedInputError(f"{path}: empty {what} file")
    lineno, vals = lines[0]
    if len(vals) != count or any(v < 1 for v in vals):
        raise MalformedInputError(f"{path}:{lineno}: {what} header needs {count} positive integer(s)")
    return vals


def _matrix(lines, path, rows: int, cols: int, lo=None, hi=None) -> list[list[int]]:
    if len(lines) != rows:
        where = lines[-1][0] if lines else "end"
        raise MalformedInputError(f"{path}:{where}: expected {rows} matrix rows, found {len(lines)}")
    for lineno, vals in lines:
        if len(vals) != cols:
            raise MalformedInputError(f"{path}:{lineno}: expected {cols} entries, found {len(vals)}")
        for v in vals:
            if (lo is not None and v < lo) or (hi is not None and v > hi):
                raise MalformedInputError(f"{path}:{lineno}: entry {v} outside {lo}..{hi}")
    return [vals for _, vals in lines]


def parse_rack(text: str, path="<text>") -> RackTable:
    lines = numeric_lines(text, path)
    (n,) = _header(lines, path, 1, "rack")
    return RackTable.from_matrix(_matrix(lines[1:], path, n, n, 1, n), check=False)


def parse_cocycle(text: str, rack: RackTable, path="<text>") -> DynamicalCocycle:
    lines = numeric_lines(text, path)
    n, k = _header(lines, path, 2, "cocycle")
    if n != rack.n:
        raise MalformedInputError(f"{path}:{lines[0][0]}: cocycle is for a rack of size {n}, rack has {rack.n}")
    return DynamicalCocycle.from_block_matrix(rack, _matrix(lines[1:], path, n * k, n * k, 1, k))


def parse_module(text: str, rack: RackTable, path="<text>") -> XModuleStructure:
    lines = numeric_lines(text, path)
    n, m = _header(lines, path, 2, "module")
    if n != rack.n:
        raise MalformedInputError(f"{path}:{lines[0][0]}: module is for a rack of size {n}, rack has {rack.n}")
    return XModuleStructure.from_block_matrix(rack, m, _matrix(lines[1:], path, n, 2 * n))


def parse_phi(text: str, n: int | None = None, path="<text>") -> TwoCocycle:
    lines = numeric_lines(text, path)
    size = len(lines) if n is None else n
    if size == 0:
        raise MalformedInputError(f"{path}: empty 2-cocycle file")
    return TwoCocycle(tuple(map(tuple, _matrix(lines, path, size, size))))


def read_rack(path) -> RackTable:
    return parse_rack(_read(path), path)


def read_cocycle(path, rack: RackTable) -> DynamicalCocycle:
    return parse_cocycle(_read(path), rack, path)


def read_module(path, rack: RackTable) -> XModuleStructure:
    return parse_module(_read(path), rack, path)


def read_phi(path, n: int | None = None) -> TwoCocycle:
    return parse_phi(_read(path), n, path)


def link_format(path) -> str:
    return LINK_SUFFIXES.get(Path(path).suffix, "native")


def read_link(path, format: str | None = None) -> LinkDiagram:
    fmt = format or link_format(path)
    try:
        return parse(_read(path), fmt, name=Path(path).stem)
    except MalformedInputError as e:
        msg = re.sub(r"^line (\d+): ", r"\1: ", str(e))
        raise MalformedInputError(f"{path}:{msg}" if msg[:1].isdigit() else f"{path}: {msg}") from None


def write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def matrix_text(rows: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(map(str, r)) + "\n" for r in rows)
