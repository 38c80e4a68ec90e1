"""Equivalence-preserving arc transformations and the Delta cost representation.

``proj`` moves the cheapest cost of a constraint slice onto a unary cost and
compensates the slice; ``ext`` pushes a unary cost into the slice and keeps
only its maximal absorbing part at the unary level.  Both leave
``c_P(t, a) + c_i(a)`` unchanged for every tuple, hence every complete
assignment keeps its valuation.

The public ``proj``/``ext`` return new problems.  The ``*_inplace`` variants
mutate a problem the caller holds exclusively; enforcement algorithms use
them.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import CorruptionError, InputError, OrderViolation, UnfairStructure
from .model import CostTable, Vcsp


class DeltaCost:
    """A constraint stored as its original table plus per-variable corrections.

    ``plus[k][a]`` accumulates everything extended from value ``a`` of the
    ``k``-th scope variable; ``minus[k][a]`` everything projected onto it.
    The effective cost of ``t`` is ``orig(t) + sum(plus) - sum(minus)``.
    Storage beyond the original is ``2 * sum(d_i)`` valuations.

    Deferring every subtraction to the end is exact when the structure is
    strictly monotonic, and for any fair structure as long as all extensions
    into a constraint happen before any projection from it (the
    directional-consistency schedule).  Other interleavings can drift from the
    dense semantics, so general GAC uses dense tables.
    """

    backend = "delta"

    def __init__(self, original: CostTable, plus=None, minus=None):
        self.original = original
        self.structure = original.structure
        self.scope = original.scope
        self.sizes = original.sizes
        bot = self.structure.bottom
        self.plus = plus if plus is not None else [[bot] * d for d in self.sizes]
        self.minus = minus if minus is not None else [[bot] * d for d in self.sizes]

    def cost(self, t: Sequence[int]):
        s = self.structure
        comb = s.combine
        up = self.original.cost(t)
        down = s.bottom
        for k, a in enumerate(t):
            up = comb(up, self.plus[k][a])
            down = comb(down, self.minus[k][a])
        try:
            return s.diff(up, down)
        except (OrderViolation, UnfairStructure) as exc:
            raise CorruptionError(
                f"Delta tables of scope {self.scope} inconsistent at {tuple(t)}: {exc}"
            ) from None

    def tuples(self):
        return itertools.product(*(range(d) for d in self.sizes))

    def tuples_with(self, pos: int, a: int):
        ranges = [range(d) for d in self.sizes]
        ranges[pos] = (a,)
        return itertools.product(*ranges)

    def slice_min(self, pos: int, a: int):
        return self.structure.min(self.cost(t) for t in self.tuples_with(pos, a))

    def shift_in(self, pos: int, a: int, alpha) -> None:
        self.plus[pos][a] = self.structure.combine(self.plus[pos][a], alpha)

    def shift_out(self, pos: int, a: int, beta) -> None:
        self.minus[pos][a] = self.structure.combine(self.minus[pos][a], beta)

    def set(self, t, value):
        raise CorruptionError("Delta-backed constraints cannot be written tuple by tuple")

    def dense(self) -> list:
        return [self.cost(t) for t in self.tuples()]

    def is_fresh(self) -> bool:
        bot = self.structure.bottom
        return all(x == bot for row in self.plus + self.minus for x in row)

    def copy(self) -> "DeltaCost":
        return DeltaCost(
            self.original,
            [list(r) for r in self.plus],
            [list(r) for r in self.minus],
        )

    def storage(self) -> int:
        return 2 * sum(self.sizes)

    def __repr__(self):
        return f"DeltaCost(scope={self.scope}, sizes={self.sizes})"


def effective_cost(dc, t: Sequence[int]):
    return dc.cost(t)


def to_delta(v: Vcsp) -> Vcsp:
    """Copy of ``v`` with every constraint behind fresh Delta tables.

    Each original is a private snapshot of the current effective table so
    later in-place work on ``v`` cannot leak into the copy.
    """
    out = v.copy()
    for p, c in v.constraints.items():
        if isinstance(c, DeltaCost) and c.is_fresh():
            out.constraints[p] = c.copy()
        else:
            out.constraints[p] = DeltaCost(CostTable(v.structure, c.scope, c.sizes, c.dense()))
    return out


def to_dense(v: Vcsp) -> Vcsp:
    return v.dense()


def resolve(v: Vcsp, scope, i, a) -> tuple[tuple[int, ...], int, int]:
    """Normalise ``(scope, variable, value)`` given as names/labels or indices."""
    key = tuple(sorted(v.var(x) for x in scope))
    if key not in v.constraints:
        raise InputError(f"no non-unary constraint on scope {list(scope)}")
    vi = v.var(i)
    if vi not in key:
        raise InputError(f"variable {i!r} is not in scope {list(scope)}")
    return key, vi, v.val(vi, a)


def proj_inplace(v: Vcsp, scope: tuple[int, ...], i: int, a: int):
    """Project the minimum of slice ``(i, a)`` of ``c_scope`` onto ``c_i(a)``.

    Returns the projected amount.
    """
    s = v.structure
    c = v.constraints[scope]
    pos = scope.index(i)
    beta = c.slice_min(pos, a)
    if beta != s.bottom:
        v.unary[i][a] = s.combine(v.unary[i][a], beta)
        c.shift_out(pos, a, beta)
    return beta


def ext_inplace(v: Vcsp, i: int, a: int, scope: tuple[int, ...]):
    """Extend ``c_i(a)`` into ``c_scope``; ``c_i(a)`` keeps its absorbing floor.

    Returns the extended amount.
    """
    s = v.structure
    alpha = v.unary[i][a]
    if alpha != s.bottom:
        v.constraints[scope].shift_in(scope.index(i), a, alpha)
        v.unary[i][a] = s.diff(alpha, alpha)
    return alpha


def proj(v: Vcsp, scope, i, a) -> Vcsp:
    key, vi, va = resolve(v, scope, i, a)
    out = v.copy()
    proj_inplace(out, key, vi, va)
    return out


def ext(v: Vcsp, i, a, scope) -> Vcsp:
    key, vi, va = resolve(v, scope, i, a)
    out = v.copy()
    ext_inplace(out, vi, va, key)
    return out
