"""Counting solutions of functional constraint systems on a finite domain.

Both rack labelings and bead labelings reduce to the same shape: variables
``0..V-1`` over ``0..d-1`` tied together by

* ``Eq(a, b)``           -- equal values,
* ``Tri(src, over, dst, fwd, bwd)`` -- ``dst = fwd[src][over]`` and
  ``src = bwd[dst][over]``,
* ``Map(src, dst, f, finv)`` -- ``dst = f[src]`` (``finv`` may be ``None``).

:func:`solve` backtracks over the lowest unassigned variable with forward
propagation, so solutions come out in lexicographic order.
:func:`brute_force` checks every assignment and is the test oracle.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, NamedTuple, Optional, Sequence


class Eq(NamedTuple):
    a: int
    b: int


class Tri(NamedTuple):
    src: int
    over: int
    dst: int
    fwd: Sequence[Sequence[int]]
    bwd: Sequence[Sequence[int]]


class Map(NamedTuple):
    src: int
    dst: int
    f: Sequence[int]
    finv: Optional[Sequence[int]]


def _watch(n_vars: int, constraints) -> list[list]:
    watch: list[list] = [[] for _ in range(n_vars)]
    for c in constraints:
        if isinstance(c, Eq):
            watch[c.a].append(c)
            watch[c.b].append(c)
        elif isinstance(c, Tri):
            for v in {c.src, c.over, c.dst}:
                watch[v].append(c)
        else:
            watch[c.src].append(c)
            watch[c.dst].append(c)
    return watch


def solve(n_vars: int, domain: int, constraints) -> Iterator[tuple[int, ...]]:
    """Yield every satisfying assignment in lexicographic order."""
    if n_vars == 0:
        yield ()
        return
    if domain == 0:
        return
    watch = _watch(n_vars, constraints)
    val = [-1] * n_vars
    trail: list[int] = []

    def assign(v: int, x: int) -> bool:
        queue = [(v, x)]
        while queue:
            v, x = queue.pop()
            cur = val[v]
            if cur >= 0:
                if cur != x:
                    return False
                continue
            val[v] = x
            trail.append(v)
            for c in watch[v]:
                if type(c) is Eq:
                    other = c.b if v == c.a else c.a
                    queue.append((other, x))
                elif type(c) is Tri:
                    s, o, d = val[c.src], val[c.over], val[c.dst]
                    if s >= 0 and o >= 0:
                        want = c.fwd[s][o]
                        if d >= 0:
                            if d != want:
                                return False
                        else:
                            queue.append((c.dst, want))
                    elif d >= 0 and o >= 0:
                        src = c.bwd[d][o]
                        if src < 0:
                            return False
                        queue.append((c.src, src))
                else:
                    s, d = val[c.src], val[c.dst]
                    if s >= 0:
                        want = c.f[s]
                        if d >= 0:
                            if d != want:
                                return False
                        else:
                            queue.append((c.dst, want))
                    elif d >= 0 and c.finv is not None:
                        src = c.finv[d]
                        if src < 0:
                            return False
                        queue.append((c.src, src))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            val[trail.pop()] = -1

    # explicit stack of (variable, next value to try, trail mark)
    def first_free(start: int) -> int:
        for v in range(start, n_vars):
            if val[v] < 0:
                return v
        return n_vars

    stack: list[list[int]] = []
    v = first_free(0)
    stack.append([v, 0, len(trail)])
    while stack:
        frame = stack[-1]
        v, x, mark = frame
        if v == n_vars:
            yield tuple(val)
            stack.pop()
            continue
        undo(mark)
        if x >= domain:
            stack.pop()
            continue
        frame[1] = x + 1
        if assign(v, x):
            stack.append([first_free(v + 1), 0, len(trail)])


def count(n_vars: int, domain: int, constraints) -> int:
    return sum(1 for _ in solve(n_vars, domain, constraints))


def satisfied(assignment: Sequence[int], constraints) -> bool:
    for c in constraints:
        if isinstance(c, Eq):
            if assignment[c.a] != assignment[c.b]:
                return False
        elif isinstance(c, Tri):
            if assignment[c.dst] != c.fwd[assignment[c.src]][assignment[c.over]]:
                return False
        else:
            if assignment[c.dst] != c.f[assignment[c.src]]:
                return False
    return True


def brute_force(n_vars: int, domain: int, constraints) -> list[tuple[int, ...]]:
    """All satisfying assignments by exhaustive search (oracle for :func:`solve`)."""
    return [a for a in product(range(domain), repeat=n_vars) if satisfied(a, constraints)]
