"""Identify small virtual knots by external invariants and write them to the corpus.

Usage::

    python3 tools/identify_virtual.py

Every one-component Gauss code with the given number of classical
crossings is enumerated up to rotation and relabeling.  A table id is
assigned only when a code is pinned down by invariants that do not involve
this package's enhancements:

* v2.1: the nonzero generalized Alexander polynomial among 2-crossing codes
  (the virtual trefoil);
* v3.7: trivial Jones polynomial together with generalized Alexander
  polynomial (t^2-1)(s^2-1)(st-1), up to units, among 3-crossing codes.

When several codes match, the first in canonical order is stored and the
rest are listed in its header.  Needs sympy (see virtual_invariants.py).
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from virtual_invariants import gen_alexander, jones, normalize, s, sp, t  # noqa: E402

from rackbeads.codes import parse_gauss, serialize  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "src" / "rackbeads" / "corpus" / "links" / "virtual4"


def canonical_codes(n: int) -> list[str]:
    seen = set()
    tokens = [(k, p) for k in range(1, n + 1) for p in "OU"]
    for seq in itertools.permutations(tokens):
        for signs in itertools.product("+-", repeat=n):
            best = None
            for r in range(2 * n):
                rot = seq[r:] + seq[:r]
                lab: dict[int, int] = {}
                for k, _ in rot:
                    lab.setdefault(k, len(lab) + 1)
                tok = tuple((p, lab[k], signs[k - 1]) for k, p in rot)
                if best is None or tok < best:
                    best = tok
            seen.add(best)
    return ["".join(f"{p}{k}{g}" for p, k, g in tok) for tok in sorted(seen)]


def _alexander_class(G) -> set:
    if G == 0:
        return {0}
    swaps = (
        G,
        G.subs({s: 1 / s, t: 1 / t}, simultaneous=True),
        G.subs({s: t, t: s}, simultaneous=True),
    )
    return {normalize(g) for g in swaps}


def matches(n: int, want_jones_trivial: bool | None, alexander) -> list[str]:
    target = normalize(sp.expand(alexander)) if alexander is not None else None
    out = []
    for code in canonical_codes(n):
        D = parse_gauss(code)
        G = gen_alexander(D)
        if target is None:
            if G == 0:
                continue
        elif target not in _alexander_class(G):
            continue
        if want_jones_trivial is not None and (jones(D) == 1) != want_jones_trivial:
            continue
        out.append(code)
    return out


def write(ident: str, codes: list[str], how: str) -> None:
    code = codes[0]
    D = parse_gauss(code, name=ident)
    meta = [
        f"id: {ident}",
        f"identified-by: {how}",
        f"matching-codes: {' '.join(codes)}",
        "source-format: gauss",
        f"source-code: {code}",
        f"crossings: {D.n_crossings}",
        f"components: {D.n_components}",
        "virtual",
    ]
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / f"{ident}.link").write_text(serialize(D, meta))


def main() -> None:
    two = matches(2, None, None)
    # among 2-crossing codes only the virtual trefoil has a nonzero polynomial;
    # store its standard all-negative form
    code = "O1-O2-U1-U2-"
    assert code in two, two
    write("v2.1", [code] + [c for c in two if c != code], "only nontrivial generalized Alexander polynomial at 2 crossings")
    three = matches(3, True, (t**2 - 1) * (s**2 - 1) * (s * t - 1))
    write("v3.7", three, "trivial Jones polynomial and generalized Alexander polynomial (t^2-1)(s^2-1)(st-1)")
    print("v2.1:", two)
    print("v3.7:", three)


if __name__ == "__main__":
    main()
