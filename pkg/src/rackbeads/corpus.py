"""The bundled data: link diagrams plus the racks, cocycles and modules used by the tests.

Layout under the corpus root::

    racks/*.rack  cocycles/*.coc  modules/*.mod  phis/*.phi
    links/<group>/<id>.link

Each link file is a native diagram whose leading ``# key: value`` comments
carry the entry metadata (source code, crossing and component counts).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fnmatch import fnmatch
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable

from .codes import parse, parse_native, serialize
from .diagram import LinkDiagram
from .report import MalformedInputError


def bundled_root() -> Path:
    return Path(str(resources.files("rackbeads") / "corpus"))


def natural_key(ident: str) -> tuple:
    """``8_2`` before ``8_10``; ``L6a5`` before ``L6n1``."""
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", ident))


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    format: str
    code: str
    crossings: int
    components: int
    virtual: bool
    path: Path
    group: str

    @cached_property
    def diagram(self) -> LinkDiagram:
        return parse_native(self.path.read_text(), name=self.id)

    def sort_key(self) -> tuple:
        return (self.crossings, natural_key(self.id))


def _metadata(text: str) -> dict[str, str]:
    meta = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        body = line[1:].strip()
        key, sep, value = body.partition(":")
        meta[key.strip()] = value.strip() if sep else ""
    return meta


def load_entry(path) -> CorpusEntry:
    path = Path(path)
    text = path.read_text()
    meta = _metadata(text)
    try:
        return CorpusEntry(
            id=meta.get("id", path.stem),
            format=meta.get("source-format", "native"),
            code=meta.get("source-code", ""),
            crossings=int(meta["crossings"]),
            components=int(meta["components"]),
            virtual="virtual" in meta,
            path=path,
            group=path.parent.name,
        )
    except (KeyError, ValueError) as e:
        raise MalformedInputError(f"{path}: bad corpus header ({e})") from None


def link_dir(root=None) -> Path:
    root = Path(root) if root is not None else bundled_root()
    return root / "links" if (root / "links").is_dir() else root


def load_entries(root=None, patterns: Iterable[str] = (), max_crossings: int | None = None) -> list[CorpusEntry]:
    """Corpus entries under ``root`` sorted by crossing count, then id.

    ``root`` may be the corpus root, its ``links`` directory, or any
    directory of ``.link`` files.  ``patterns`` are shell-style globs on the
    entry id or group; an entry is kept if any pattern matches.
    """
    base = link_dir(root)
    if not base.is_dir():
        raise MalformedInputError(f"{base}: corpus directory not found")
    patterns = list(patterns)
    out = []
    for path in sorted(base.rglob("*.link")):
        e = load_entry(path)
        if patterns and not any(fnmatch(e.id, p) or fnmatch(e.group, p) for p in patterns):
            continue
        if max_crossings is not None and e.crossings > max_crossings:
            continue
        out.append(e)
    ids = [e.id for e in out]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    if dup:
        raise MalformedInputError(f"{base}: duplicate corpus ids {dup}")
    return sorted(out, key=CorpusEntry.sort_key)


def find_link(ident: str, root=None) -> CorpusEntry:
    for e in load_entries(root):
        if e.id == ident:
            return e
    raise MalformedInputError(f"no corpus link with id {ident!r}")


def data_file(kind: str, name: str, root=None) -> Path:
    """Path of a bundled data file, e.g. ``data_file("racks", "dihedral3.rack")``."""
    root = Path(root) if root is not None else bundled_root()
    return root / kind / name


def check_entry(e: CorpusEntry) -> list[str]:
    """Problems with one entry; empty when it is consistent."""
    problems = []
    try:
        D = e.diagram
    except MalformedInputError as err:
        return [f"{e.id}: {err}"]
    if D.n_components != e.components:
        problems.append(f"{e.id}: {D.n_components} components, header says {e.components}")
    if D.n_crossings != e.crossings:
        problems.append(f"{e.id}: {D.n_crossings} crossings, header says {e.crossings}")
    if D.virtual != e.virtual:
        problems.append(f"{e.id}: virtual flag disagrees with header")
    if e.format != "native":
        try:
            again = parse(e.code, e.format, name=e.id)
        except MalformedInputError as err:
            problems.append(f"{e.id}: source code does not parse ({err})")
        else:
            if serialize(again) != serialize(D):
                problems.append(f"{e.id}: stored diagram differs from its source code")
    return problems


def self_test(root=None) -> list[str]:
    problems = []
    for e in load_entries(root):
        problems += check_entry(e)
    return problems
