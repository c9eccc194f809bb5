"""Rack labelings over all framing classes and the invariants built on them.

Every invariant here sums a per-labeling signature over the ``N^c``
framings mod ``N`` of the link, ``N`` being the rack rank.  Framings are
realized by adding positive kinks (:func:`rackbeads.diagram.with_framing`),
visited in lexicographic order of the framing vector.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

from . import solver
from .cocycles import (
    DynamicalCocycle,
    TwoCocycle,
    XModuleStructure,
    verify_2cocycle_reduced,
    verify_cocycle,
    verify_n_reduced,
    verify_xmodule,
)
from .diagram import KinkRelation, LinkDiagram, OverPass, Relation, label_constraints, with_framing
from .linalg import count_kernel, presentation_matrix
from .polynomial import InvariantPolynomial, WrithePolynomial
from .racks import RackTable, subrack_closure


class VerificationError(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(report.summary())


def framings(D: LinkDiagram, N: int) -> Iterator[tuple[int, ...]]:
    return product(range(N), repeat=D.n_components)


def framed_diagrams(D: LinkDiagram, N: int) -> Iterator[tuple[tuple[int, ...], LinkDiagram]]:
    for w in framings(D, N):
        yield w, with_framing(D, w, N)


# ---------------------------------------------------------------- labelings


def rack_system(D: LinkDiagram, R: RackTable) -> list:
    pi = [p - 1 for p in R.kink.perm]
    pinv = [0] * R.n
    for i, p in enumerate(pi):
        pinv[p] = i
    out = []
    for c in label_constraints(D):
        if isinstance(c, OverPass):
            out.append(solver.Eq(c.over_in - 1, c.over_out - 1))
        elif isinstance(c, Relation):
            out.append(solver.Tri(c.src - 1, c.over - 1, c.dst - 1, R.op0, R.inv0))
        else:
            out.append(solver.Map(c.inp - 1, c.out - 1, pi, pinv))
    return out


def enumerate_labelings(D: LinkDiagram, R: RackTable, brute: bool = False) -> list[tuple[int, ...]]:
    """All X-labelings of ``D`` as tuples of 1-based labels indexed by semi-arc."""
    system = rack_system(D, R)
    if brute:
        sols = solver.brute_force(D.n_semi_arcs, R.n, system)
    else:
        sols = solver.solve(D.n_semi_arcs, R.n, system)
    return [tuple(v + 1 for v in s) for s in sols]


def bead_system(D: LinkDiagram, labeling: Sequence[int], alpha: DynamicalCocycle) -> list:
    f = [v - 1 for v in labeling]
    k = alpha.k
    out = []
    for c in label_constraints(D):
        if isinstance(c, OverPass):
            out.append(solver.Eq(c.over_in - 1, c.over_out - 1))
        elif isinstance(c, Relation):
            x, y = f[c.src - 1], f[c.over - 1]
            out.append(solver.Tri(c.src - 1, c.over - 1, c.dst - 1, alpha.op0[x][y], alpha.inv0[x][y]))
        else:
            rho = alpha.rho0(f[c.inp - 1])
            rinv = None
            if len(set(rho)) == k:
                rinv = [0] * k
                for a, b in enumerate(rho):
                    rinv[b] = a
            out.append(solver.Map(c.inp - 1, c.out - 1, rho, rinv))
    return out


def bead_labelings(D: LinkDiagram, labeling: Sequence[int], alpha: DynamicalCocycle, brute: bool = False):
    system = bead_system(D, labeling, alpha)
    if brute:
        sols = solver.brute_force(D.n_semi_arcs, alpha.k, system)
    else:
        sols = solver.solve(D.n_semi_arcs, alpha.k, system)
    return [tuple(v + 1 for v in s) for s in sols]


def bead_count(D: LinkDiagram, labeling: Sequence[int], alpha: DynamicalCocycle, brute: bool = False) -> int:
    """Number of bead labelings over a fixed X-labeling."""
    system = bead_system(D, labeling, alpha)
    if brute:
        return len(solver.brute_force(D.n_semi_arcs, alpha.k, system))
    return solver.count(D.n_semi_arcs, alpha.k, system)


def boltzmann_weight(D: LinkDiagram, labeling: Sequence[int], phi: TwoCocycle) -> int:
    """Signed sum of ``phi(source, over)`` over crossings, plus ``phi(x, x)`` per kink.

    The source label is the one the rack operation acts on: the incoming
    under label at a positive crossing, the outgoing one at a negative
    crossing.  A kink stands for a positive curl whose strand passes over
    first, so it contributes ``phi(x, x)``; for a 2-cocycle this equals
    ``phi(x, pi(x))``.
    """
    total = 0
    for c in label_constraints(D):
        if isinstance(c, Relation):
            total += c.sign * phi(labeling[c.src - 1], labeling[c.over - 1])
        elif isinstance(c, KinkRelation):
            x = labeling[c.inp - 1]
            total += phi(x, x)
    return total


# ---------------------------------------------------------------- invariants


def _require(report) -> None:
    if not report.valid:
        raise VerificationError(report)


def labelings_by_framing(D: LinkDiagram, R: RackTable):
    """Yield ``(w, framed diagram, labelings)`` for every framing class."""
    for w, F in framed_diagrams(D, R.rank):
        yield w, F, enumerate_labelings(F, R)


def counting_invariant(D: LinkDiagram, R: RackTable) -> int:
    return sum(len(labs) for _, _, labs in labelings_by_framing(D, R))


def writhe_invariant(D: LinkDiagram, R: RackTable) -> WrithePolynomial:
    return WrithePolynomial.from_mapping(
        {w: len(labs) for w, _, labs in labelings_by_framing(D, R)}
    )


def image_invariant(D: LinkDiagram, R: RackTable) -> InvariantPolynomial:
    exps = []
    for _, _, labs in labelings_by_framing(D, R):
        exps += [len(subrack_closure(R, set(f))) for f in labs]
    return InvariantPolynomial.from_exponents(exps)


def cocycle_invariant(D: LinkDiagram, R: RackTable, phi: TwoCocycle) -> InvariantPolynomial:
    _require(verify_2cocycle_reduced(R, phi))
    exps = []
    for _, F, labs in labelings_by_framing(D, R):
        exps += [boltzmann_weight(F, f, phi) for f in labs]
    return InvariantPolynomial.from_exponents(exps)


def module_invariant(D: LinkDiagram, R: RackTable, module: XModuleStructure) -> InvariantPolynomial:
    _require(verify_xmodule(R, module))
    exps = []
    for _, F, labs in labelings_by_framing(D, R):
        exps += [count_kernel(presentation_matrix(F, f, module)) for f in labs]
    return InvariantPolynomial.from_exponents(exps)


def dynamical_invariant(D: LinkDiagram, R: RackTable, alpha: DynamicalCocycle) -> InvariantPolynomial:
    _require(verify_cocycle(R, alpha))
    _require(verify_n_reduced(R, alpha))
    return _dynamical_unchecked(D, R, alpha)


def _dynamical_unchecked(D, R, alpha) -> InvariantPolynomial:
    exps = []
    for _, F, labs in labelings_by_framing(D, R):
        exps += [bead_count(F, f, alpha) for f in labs]
    return InvariantPolynomial.from_exponents(exps)


KINDS = ("counting", "image", "writhe", "cocycle2", "module", "dynamical")


def evaluate(kind: str, D: LinkDiagram, R: RackTable, data=None):
    """Dispatch by invariant name; ``data`` is the cocycle/module/phi if needed."""
    if kind == "counting":
        return counting_invariant(D, R)
    if kind == "image":
        return image_invariant(D, R)
    if kind == "writhe":
        return writhe_invariant(D, R)
    if kind == "cocycle2":
        return cocycle_invariant(D, R, data)
    if kind == "module":
        return module_invariant(D, R, data)
    if kind == "dynamical":
        return dynamical_invariant(D, R, data)
    raise ValueError(f"unknown invariant {kind!r}; expected one of {KINDS}")
