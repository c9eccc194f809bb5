"""Jones polynomial and generalized Alexander polynomial of (virtual) link diagrams.

Used only to identify virtual knots from their published invariants when
building the corpus; needs sympy, which the package itself does not use.
"""

from __future__ import annotations

from itertools import product

import sympy as sp

from rackbeads.diagram import LinkDiagram

A, s, t = sp.symbols("A s t")


def _loops(D: LinkDiagram, state) -> int:
    # ends: ("h", arc) head of a semi-arc (where it enters a node), ("t", arc) its tail
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for a in range(1, D.n_semi_arcs + 1):
        union(("h", a), ("t", a))
    for c, oriented in zip(D.crossings, state):
        if oriented:
            union(("h", c.under_in), ("t", c.over_out))
            union(("h", c.over_in), ("t", c.under_out))
        else:
            union(("h", c.under_in), ("h", c.over_in))
            union(("t", c.under_out), ("t", c.over_out))
    for k in D.kinks:
        union(("h", k.inp), ("t", k.out))
    return len({find(x) for x in list(parent)})


def jones(D: LinkDiagram):
    """Normalized bracket ``(-A^3)^(-w) <D>`` as a Laurent polynomial in A."""
    d = -A**2 - A**-2
    total = 0
    for state in product((True, False), repeat=D.n_crossings):
        na = 0
        for c, oriented in zip(D.crossings, state):
            # the A-smoothing is the oriented one at a positive crossing
            na += oriented if c.sign > 0 else (not oriented)
        nb = D.n_crossings - na
        total += A ** (na - nb) * d ** (_loops(D, state) - 1)
    w = sum(c.sign for c in D.crossings)
    return sp.expand(sp.simplify((-A**3) ** (-w) * total))


def gen_alexander(D: LinkDiagram):
    """Determinant of the Alexander biquandle presentation on semi-arcs.

    Positive crossing: ``uo = t*ui + (1 - s*t)*oi`` and ``oo = s*oi``;
    a negative crossing imposes the same relation with ins and outs swapped.
    """
    n = D.n_semi_arcs
    rows = []
    for c in D.crossings:
        if c.sign > 0:
            ui, oi, uo, oo = c.under_in, c.over_in, c.under_out, c.over_out
        else:
            ui, oi, uo, oo = c.under_out, c.over_out, c.under_in, c.over_in
        r1 = [0] * n
        r1[uo - 1] -= 1
        r1[ui - 1] += t
        r1[oi - 1] += 1 - s * t
        r2 = [0] * n
        r2[oo - 1] -= 1
        r2[oi - 1] += s
        rows += [r1, r2]
    if len(rows) != n:
        raise ValueError("square presentation needs a kink-free diagram with 2 semi-arcs per crossing")
    return sp.factor(sp.Matrix(rows).det())


def normalize(p):
    """Strip unit factors +-s^i t^j so polynomials compare up to units."""
    p = sp.factor(sp.expand(p))
    if p == 0:
        return sp.Integer(0)
    num, den = sp.fraction(sp.together(p))
    num = sp.Poly(sp.expand(num), s, t)
    (i, j), _ = min(num.terms(), key=lambda m: m[0])
    # divide by the lowest monomial power in each variable
    mi = min(m[0] for m, _ in num.terms())
    mj = min(m[1] for m, _ in num.terms())
    q = sp.expand(num.as_expr() / (s**mi * t**mj))
    lead = sp.Poly(q, s, t).coeffs()[0]
    return sp.expand(q / lead * (1 if lead > 0 else -1) * (1 if lead > 0 else -1))
