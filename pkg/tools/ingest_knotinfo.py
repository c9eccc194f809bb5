"""Regenerate the classical link corpus from the KnotInfo / LinkInfo CSV dumps.

Usage::

    python3 tools/ingest_knotinfo.py DIR

where DIR holds ``knotinfo_data_complete.csv`` and
``linkinfo_data_complete.csv`` from the ``database_knotinfo`` distribution.
Knots come from the ``pd_notation`` column, links from
``pd_notation_vector`` of the all-zero orientation entry.  Output goes to
``src/rackbeads/corpus/links/{knots8,links7}``.
"""

from __future__ import annotations

import csv
import re
import sys
from pathlib import Path

from rackbeads.codes import parse_pd, serialize

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "src" / "rackbeads" / "corpus" / "links"

KNOTS = ["3_1", "4_1", "5_1", "5_2"] + [f"6_{i}" for i in range(1, 4)] + [
    f"7_{i}" for i in range(1, 8)
] + [f"8_{i}" for i in range(1, 22)]
LINKS = ["L2a1", "L4a1", "L5a1"] + [f"L6a{i}" for i in range(1, 6)] + ["L6n1"] + [
    f"L7a{i}" for i in range(1, 8)
] + ["L7n1", "L7n2"]

_TUPLE = re.compile(r"[\[\{]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\]\}]")


def _rows(path: Path):
    csv.field_size_limit(1 << 30)
    with path.open(newline="") as fh:
        reader = csv.reader(fh, delimiter="|")
        header = next(reader)
        for row in reader:
            yield dict(zip(header, row))


def _pd(text: str) -> str:
    return ", ".join("X[%s,%s,%s,%s]" % t for t in _TUPLE.findall(text))


def _write(group: str, ident: str, pd: str, source: str) -> None:
    D = parse_pd(pd, name=ident)
    meta = [
        f"id: {ident}",
        f"source: {source}",
        "source-format: pd",
        f"source-code: {pd}",
        f"crossings: {D.n_crossings}",
        f"components: {D.n_components}",
        "classical",
    ]
    path = OUT / group / f"{ident}.link"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize(D, meta))


def main(src: str) -> None:
    src = Path(src)
    knots = {r["name"]: r for r in _rows(src / "knotinfo_data_complete.csv")}
    for k in KNOTS:
        _write("knots8", k, _pd(knots[k]["pd_notation"]), "KnotInfo")
    unknot = OUT / "knots8" / "unknot.link"
    unknot.write_text(
        "# id: unknot\n# source-format: native\n# crossings: 0\n# components: 1\n"
        "# classical\nname unknot\nK 1\n"
    )
    links = {}
    for r in _rows(src / "linkinfo_data_complete.csv"):
        m = re.fullmatch(r"(L\w+)\{0(?:,0)*\}", r["name"])
        if m:
            links[m.group(1)] = r
    for l in LINKS:
        _write("links7", l, _pd(links[l]["pd_notation_vector"]), "LinkInfo, orientation {0...}")


if __name__ == "__main__":
    main(sys.argv[1])
