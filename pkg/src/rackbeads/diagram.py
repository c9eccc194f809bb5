"""Oriented link diagrams cut into semi-arcs.

A semi-arc runs from one crossing passage (over or under) or kink to the
next.  Semi-arcs are the labeling sites: the over-strand of a crossing is
two semi-arcs forced equal, so solution counts match the usual arc
labelings while every constraint stays local.

Three text formats are understood:

* native -- one record per line::

      name 3_1
      virtual                      # optional flag
      C + 1 4 2 5                  # sign under_in over_in under_out over_out
      R 3 4                        # positive kink: in out
      K 1 2 3 4 5 6                # one component, semi-arcs in travel order

* pd -- Knot Atlas planar diagram code, ``X[a,b,c,d]`` or ``X(a,b,c,d)``
  (or bare 4-lists); ``a`` is the incoming under edge and the edges are
  listed counterclockwise.
* gauss -- signed over/under Gauss code, one component per line, e.g.
  ``O1-O2-U1-U2-``.  Virtual crossings are simply absent from the code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .report import MalformedInputError


class Crossing(NamedTuple):
    sign: int
    under_in: int
    over_in: int
    under_out: int
    over_out: int


class Kink(NamedTuple):
    inp: int
    out: int


class Relation(NamedTuple):
    """``label(dst) = label(src) |> label(over)`` at a classical crossing.

    For a positive crossing ``src`` is the incoming under semi-arc; for a
    negative one the roles of the two under semi-arcs are exchanged.
    """

    crossing: int
    sign: int
    src: int
    over: int
    dst: int


class OverPass(NamedTuple):
    crossing: int
    over_in: int
    over_out: int


class KinkRelation(NamedTuple):
    """``label(out) = pi(label(inp))``; beads pass through ``rho``."""

    kink: int
    inp: int
    out: int


@dataclass(frozen=True)
class LinkDiagram:
    n_semi_arcs: int
    crossings: tuple[Crossing, ...]
    kinks: tuple[Kink, ...]
    components: tuple[tuple[int, ...], ...]
    virtual: bool = False
    name: str = ""
    _component_of: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(Crossing(*c) for c in self.crossings))
        object.__setattr__(self, "kinks", tuple(Kink(*k) for k in self.kinks))
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))
        validate(self)
        comp = {}
        for i, cyc in enumerate(self.components):
            for s in cyc:
                comp[s] = i
        object.__setattr__(self, "_component_of", comp)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def component_of(self, semi_arc: int) -> int:
        return self._component_of[semi_arc]

    def semi_arcs(self) -> range:
        return range(1, self.n_semi_arcs + 1)

    def arcs(self) -> list[tuple[int, ...]]:
        """Semi-arcs merged along over-passes, ordered by smallest member."""
        parent = list(range(self.n_semi_arcs + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for c in self.crossings:
            ra, rb = find(c.over_in), find(c.over_out)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for s in self.semi_arcs():
            groups.setdefault(find(s), []).append(s)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def _successors(D: LinkDiagram) -> dict[int, int]:
    nxt: dict[int, int] = {}
    outs: set[int] = set()

    def link(a: int, b: int, where: str) -> None:
        for s in (a, b):
            if not 1 <= s <= D.n_semi_arcs:
                raise MalformedInputError(f"{where}: dangling semi-arc id {s}")
        if a in nxt:
            raise MalformedInputError(f"{where}: semi-arc {a} enters two nodes")
        if b in outs:
            raise MalformedInputError(f"{where}: semi-arc {b} leaves two nodes")
        nxt[a] = b
        outs.add(b)

    for i, c in enumerate(D.crossings, 1):
        if c.sign not in (1, -1):
            raise MalformedInputError(f"crossing {i}: sign must be +1 or -1")
        link(c.under_in, c.under_out, f"crossing {i} (under)")
        link(c.over_in, c.over_out, f"crossing {i} (over)")
    for i, k in enumerate(D.kinks, 1):
        link(k.inp, k.out, f"kink {i}")
    return nxt


def validate(D: LinkDiagram) -> None:
    """Raise :class:`MalformedInputError` unless ``D`` is a consistent diagram."""
    nxt = _successors(D)
    seen: set[int] = set()
    for ci, cyc in enumerate(D.components, 1):
        if not cyc:
            raise MalformedInputError(f"component {ci} is empty")
        for s in cyc:
            if not 1 <= s <= D.n_semi_arcs:
                raise MalformedInputError(f"component {ci}: dangling semi-arc id {s}")
            if s in seen:
                raise MalformedInputError(f"semi-arc {s} listed in two components")
            seen.add(s)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if len(cyc) == 1 and a not in nxt:
                continue  # closed circle without nodes
            if nxt.get(a) != b:
                raise MalformedInputError(
                    f"component {ci}: semi-arc {a} is not followed by {b}"
                )
    if len(seen) != D.n_semi_arcs:
        missing = sorted(set(range(1, D.n_semi_arcs + 1)) - seen)
        raise MalformedInputError(f"semi-arcs not on any component: {missing}")


# ---------------------------------------------------------------- queries


def self_writhe(D: LinkDiagram) -> tuple[int, ...]:
    w = [0] * D.n_components
    for c in D.crossings:
        i = D.component_of(c.under_in)
        if D.component_of(c.over_in) == i:
            w[i] += c.sign
    for k in D.kinks:
        w[D.component_of(k.inp)] += 1
    return tuple(w)


def label_constraints(D: LinkDiagram) -> list:
    out: list = []
    for i, c in enumerate(D.crossings):
        out.append(OverPass(i, c.over_in, c.over_out))
        if c.sign > 0:
            out.append(Relation(i, 1, c.under_in, c.over_in, c.under_out))
        else:
            out.append(Relation(i, -1, c.under_out, c.over_in, c.under_in))
    for i, k in enumerate(D.kinks):
        out.append(KinkRelation(i, k.inp, k.out))
    return out


# ---------------------------------------------------------------- surgery


class _Partial(NamedTuple):
    n_semi_arcs: int
    crossings: Sequence[Crossing]
    kinks: Sequence[Kink]
    components: Sequence[tuple[int, ...]]


def _cut(D, s: int, nodes: int) -> tuple[_Partial, list[int]]:
    """Make room for ``nodes`` new nodes right after the tail of semi-arc ``s``.

    Returns the rewired pieces and a chain ``[s, ..., last]`` of length
    ``nodes + 1``; the caller must add a node joining each consecutive pair.
    ``last`` enters whatever ``s`` used to enter.  On a bare circle the chain
    closes back onto ``s`` itself.
    """
    enters = any(c.under_in == s or c.over_in == s for c in D.crossings) or any(
        k.inp == s for k in D.kinks
    )
    n_new = nodes if enters else nodes - 1
    fresh = list(range(D.n_semi_arcs + 1, D.n_semi_arcs + 1 + n_new))
    last = fresh[-1] if enters else s

    def fix_in(c: Crossing) -> Crossing:
        return c._replace(
            under_in=last if c.under_in == s else c.under_in,
            over_in=last if c.over_in == s else c.over_in,
        )

    crossings = [fix_in(c) for c in D.crossings]
    kinks = [Kink(last, k.out) if k.inp == s else k for k in D.kinks]
    components = []
    for cyc in D.components:
        if s in cyc:
            j = cyc.index(s)
            cyc = cyc[: j + 1] + tuple(fresh) + cyc[j + 1 :]
        components.append(tuple(cyc))
    part = _Partial(D.n_semi_arcs + n_new, crossings, kinks, components)
    return part, [s] + fresh + ([] if enters else [s])


def _rebuild(D: LinkDiagram, part: _Partial, crossings=(), kinks=()) -> LinkDiagram:
    return LinkDiagram(
        n_semi_arcs=part.n_semi_arcs,
        crossings=tuple(part.crossings) + tuple(crossings),
        kinks=tuple(part.kinks) + tuple(kinks),
        components=tuple(part.components),
        virtual=D.virtual,
        name=D.name,
    )


def add_kinks(D: LinkDiagram, component: int, count: int) -> LinkDiagram:
    """Insert ``count`` positive kinks at the start of a component."""
    if count <= 0:
        return D
    part, chain = _cut(D, D.components[component][0], count)
    return _rebuild(D, part, kinks=[Kink(a, b) for a, b in zip(chain, chain[1:])])


def with_framing(D: LinkDiagram, w: Sequence[int], N: int) -> LinkDiagram:
    """Add positive kinks so the self-writhe is congruent to ``w`` mod ``N``."""
    if len(w) != D.n_components:
        raise ValueError(
            f"framing vector has {len(w)} entries, diagram has {D.n_components} components"
        )
    if any(not 0 <= x < N for x in w):
        raise ValueError(f"framing entries must lie in 0..{N - 1}")
    sw = self_writhe(D)
    for i in range(D.n_components):
        D = add_kinks(D, i, (w[i] - sw[i]) % N)
    return D


def reidemeister2(D: LinkDiagram, over_arc: int, under_arc: int, sign: int = 1) -> LinkDiagram:
    """Slide semi-arc ``under_arc`` beneath ``over_arc``, creating a canceling pair.

    The first new crossing has sign ``sign``, the second ``-sign``.  When the
    two semi-arcs do not share a face the slide goes through virtual
    crossings, which is still an equivalence of virtual links.
    """
    if over_arc == under_arc:
        raise ValueError("a Reidemeister II move needs two distinct semi-arcs")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    part, (o0, o1, o2) = _cut(D, over_arc, 2)
    part, (u0, u1, u2) = _cut(part, under_arc, 2)
    new = (
        Crossing(sign, u0, o0, u1, o1),
        Crossing(-sign, u1, o1, u2, o2),
    )
    return _rebuild(D, part, crossings=new)


def curl_pair(D: LinkDiagram, component: int = 0) -> LinkDiagram:
    """Add a positive curl followed by a negative curl as genuine crossings.

    In each curl the strand passes over first and then back under itself.
    Self-writhe is unchanged.
    """
    part, (s, a, b, c, d) = _cut(D, D.components[component][0], 4)
    new = (
        Crossing(1, a, s, b, a),
        Crossing(-1, c, b, d, c),
    )
    return _rebuild(D, part, crossings=new)
