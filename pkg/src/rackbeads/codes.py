"""Text encodings of link diagrams: native records, PD codes, Gauss codes."""

from __future__ import annotations

import re
from typing import Sequence

from .diagram import Crossing, Kink, LinkDiagram
from .report import MalformedInputError

FORMATS = ("native", "pd", "gauss")


def parse(code: str, format: str = "native", name: str = "") -> LinkDiagram:
    if format == "native":
        return parse_native(code, name)
    if format == "pd":
        return parse_pd(code, name)
    if format == "gauss":
        return parse_gauss(code, name)
    raise ValueError(f"unknown diagram format {format!r}; expected one of {FORMATS}")


def _sign(tok: str, where: str) -> int:
    if tok in ("+", "+1", "1"):
        return 1
    if tok in ("-", "-1"):
        return -1
    raise MalformedInputError(f"{where}: bad crossing sign {tok!r}")


def _ints(toks: Sequence[str], where: str) -> list[int]:
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise MalformedInputError(f"{where}: expected integers, got {' '.join(toks)!r}") from None


def _renumber(crossings, kinks, components):
    """Map the semi-arc ids in use onto 1..S, preserving their order."""
    ids = sorted({s for cyc in components for s in cyc})
    rel = {s: i for i, s in enumerate(ids, 1)}

    def get(s):
        if s not in rel:
            raise MalformedInputError(f"dangling semi-arc id {s} (not on any component)")
        return rel[s]

    crossings = [Crossing(c[0], *(get(s) for s in c[1:])) for c in crossings]
    kinks = [Kink(get(a), get(b)) for a, b in kinks]
    components = [tuple(get(s) for s in cyc) for cyc in components]
    return len(ids), crossings, kinks, components


def parse_native(text: str, name: str = "") -> LinkDiagram:
    crossings, kinks, components = [], [], []
    virtual = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head, rest = toks[0], toks[1:]
        where = f"line {lineno}"
        if head == "C":
            if len(rest) != 5:
                raise MalformedInputError(f"{where}: crossing needs a sign and 4 semi-arcs")
            crossings.append((_sign(rest[0], where), *_ints(rest[1:], where)))
        elif head == "R":
            if len(rest) != 2:
                raise MalformedInputError(f"{where}: kink needs 2 semi-arcs")
            kinks.append(tuple(_ints(rest, where)))
        elif head == "K":
            if not rest:
                raise MalformedInputError(f"{where}: empty component")
            components.append(tuple(_ints(rest, where)))
        elif head == "name":
            name = name or " ".join(rest)
        elif head == "virtual":
            virtual = True
        else:
            raise MalformedInputError(f"{where}: unknown record {head!r}")
    if not components:
        raise MalformedInputError("diagram declares no components")
    S, crossings, kinks, components = _renumber(crossings, kinks, components)
    return LinkDiagram(S, tuple(crossings), tuple(kinks), tuple(components), virtual, name)


def serialize(D: LinkDiagram, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    if D.name:
        lines.append(f"name {D.name}")
    if D.virtual:
        lines.append("virtual")
    for c in D.crossings:
        s = "+" if c.sign > 0 else "-"
        lines.append(f"C {s} {c.under_in} {c.over_in} {c.under_out} {c.over_out}")
    for k in D.kinks:
        lines.append(f"R {k.inp} {k.out}")
    for cyc in D.components:
        lines.append("K " + " ".join(map(str, cyc)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- PD codes

_PD_TUPLE = re.compile(r"[\[\(\{]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\]\)\}]")


def _pd_tuples(code: str) -> list[tuple[int, int, int, int]]:
    body = re.sub(r"\s+", " ", code)
    found = [tuple(int(x) for x in m.groups()) for m in _PD_TUPLE.finditer(body)]
    # every bracketed group must be a 4-tuple
    groups = re.findall(r"[\[\(\{]([^\[\]\(\)\{\}]*)[\]\)\}]", body)
    for g in groups:
        if g.strip() and len(g.split(",")) != 4:
            raise MalformedInputError(f"PD crossing with arity {len(g.split(','))}: ({g.strip()})")
    return found


def parse_pd(code: str, name: str = "") -> LinkDiagram:
    """Knot Atlas PD code -> diagram.

    ``X[a,b,c,d]``: ``a`` is the incoming under edge, ``c`` the outgoing one,
    and ``b, d`` the over edges, listed counterclockwise.  The over
    direction is forced by requiring each edge to leave one crossing and
    enter another; strands that only ever pass over fall back on the edge
    numbering (``d`` follows ``b``).  The crossing is positive exactly when
    the over strand runs from ``d`` to ``b``.
    """
    xs = _pd_tuples(code)
    if not xs:
        raise MalformedInputError("PD code contains no crossings")
    slots: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(xs):
        for p, e in enumerate(x):
            slots.setdefault(e, []).append((ci, p))
    for e, sl in slots.items():
        if len(sl) != 2:
            raise MalformedInputError(f"PD edge {e} appears {len(sl)} times (expected 2)")

    # direction[ci] = True when the over strand runs b -> d
    direction: dict[int, bool] = {}

    def role(ci: int, p: int) -> str | None:
        if p == 0:
            return "in"
        if p == 2:
            return "out"
        if ci not in direction:
            return None
        b_to_d = direction[ci]
        return ("in" if b_to_d else "out") if p == 1 else ("out" if b_to_d else "in")

    def settle() -> bool:
        changed = True
        while changed:
            changed = False
            for e, ((c1, p1), (c2, p2)) in slots.items():
                r1, r2 = role(c1, p1), role(c2, p2)
                if r1 is not None and r2 is not None:
                    if r1 == r2:
                        raise MalformedInputError(f"PD edge {e} cannot be oriented consistently")
                    continue
                if r1 is None and r2 is None:
                    continue
                known, (cu, pu) = (r1, (c2, p2)) if r1 is not None else (r2, (c1, p1))
                want = "out" if known == "in" else "in"
                direction[cu] = (pu == 1) == (want == "in")
                changed = True
        return len(direction) == len(xs)

    while not settle():
        ci = min(c for c in range(len(xs)) if c not in direction)
        a, b, c, d = xs[ci]
        direction[ci] = d == b + 1 or not (b == d + 1)

    crossings = []
    nxt: dict[int, int] = {}
    for ci, (a, b, c, d) in enumerate(xs):
        if direction[ci]:
            o_in, o_out, sign = b, d, -1
        else:
            o_in, o_out, sign = d, b, 1
        crossings.append((sign, a, o_in, c, o_out))
        nxt[a] = c
        nxt[o_in] = o_out
    components = _cycles(nxt)
    S, crossings, kinks, components = _renumber(crossings, [], components)
    return LinkDiagram(S, tuple(crossings), (), tuple(components), False, name)


def _cycles(nxt: dict[int, int]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for start in sorted(nxt):
        if start in seen:
            continue
        cyc = []
        s = start
        while s not in seen:
            seen.add(s)
            cyc.append(s)
            if s not in nxt:
                raise MalformedInputError(f"edge {s} has no successor")
            s = nxt[s]
        if s != start:
            raise MalformedInputError(f"edges do not close into a cycle at {s}")
        out.append(tuple(cyc))
    return out


def to_pd(D: LinkDiagram) -> str:
    """Inverse of :func:`parse_pd` for kink-free diagrams."""
    if D.kinks:
        raise ValueError("PD output needs a kink-free diagram")
    parts = []
    for c in D.crossings:
        if c.sign > 0:
            parts.append(f"X[{c.under_in},{c.over_out},{c.under_out},{c.over_in}]")
        else:
            parts.append(f"X[{c.under_in},{c.over_in},{c.under_out},{c.over_out}]")
    return "PD[" + ", ".join(parts) + "]"


# ---------------------------------------------------------------- Gauss codes

_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss(code: str, name: str = "", virtual: bool | None = None) -> LinkDiagram:
    """Signed Gauss code, one component per line (``O1-O2-U1-U2-``).

    Consecutive classical passages bound a semi-arc; anything between them
    (virtual crossings) is invisible here.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in code.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MalformedInputError("empty Gauss code")
    passages: list[list[tuple[str, int, int]]] = []
    for ln in lines:
        compact = re.sub(r"[\s,]", "", ln)
        toks = _GAUSS_TOKEN.findall(compact)
        if "".join(a + b + c for a, b, c in toks) != compact:
            raise MalformedInputError(f"unparseable Gauss code component {ln!r}")
        passages.append([(a, int(b), 1 if c == "+" else -1) for a, b, c in toks])

    start = []
    total = 0
    for comp in passages:
        start.append(total)
        total += max(len(comp), 1)
    info: dict[int, dict] = {}
    components = []
    for k, comp in enumerate(passages):
        base = start[k]
        L = len(comp)
        components.append(tuple(range(base + 1, base + max(L, 1) + 1)))
        for p, (kind, cid, sign) in enumerate(comp):
            s_in = base + ((p - 1) % L) + 1
            s_out = base + p + 1
            rec = info.setdefault(cid, {})
            if kind in rec:
                raise MalformedInputError(f"crossing {cid} has two {kind} passages")
            if "sign" in rec and rec["sign"] != sign:
                raise MalformedInputError(f"crossing {cid} has inconsistent signs")
            rec["sign"] = sign
            rec[kind] = (s_in, s_out)
    crossings = []
    for cid in sorted(info):
        rec = info[cid]
        if "O" not in rec or "U" not in rec:
            raise MalformedInputError(f"crossing {cid} lacks an over or under passage")
        (u_in, u_out), (o_in, o_out) = rec["U"], rec["O"]
        crossings.append(Crossing(rec["sign"], u_in, o_in, u_out, o_out))
    if virtual is None:
        virtual = True
    return LinkDiagram(total, tuple(crossings), (), tuple(components), virtual, name)
