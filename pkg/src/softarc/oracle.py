"""Brute-force reference implementations.

Deliberately naive and independent of the enforcement code: nothing here calls
into ``transforms``, ``gac`` or ``dac``, and assignment valuation is
re-derived from the raw tables instead of using ``model.valuation_of``.
Agreement between the two sides is evidence, not tautology.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import CapabilityError, InputError, SizeError
from .model import Vcsp
from .valuation import ValuationStructure

DEFAULT_CAP = 10**6


@dataclass
class OptimumResult:
    valuation: object
    assignment: dict
    count: int


@dataclass
class FairnessReport:
    fair: bool
    pairs: int
    witness: tuple | None = None
    mismatches: list = field(default_factory=list)


def _space(v: Vcsp, cap: int):
    total = math.prod(len(d) for d in v.domains)
    if total > cap:
        raise SizeError(f"{total} complete assignments exceed the cap of {cap}")
    return itertools.product(*(range(len(d)) for d in v.domains))


def _value(v: Vcsp, vals: tuple):
    s = v.structure
    total = s.bottom
    for i in range(len(vals)):
        total = s.combine(total, v.unary[i][vals[i]])
    for scope, table in v.constraints.items():
        sub = tuple(vals[i] for i in scope)
        total = s.combine(total, table.cost(sub))
    return total


def brute_optimum(v: Vcsp, cap: int = DEFAULT_CAP) -> OptimumResult:
    """Enumerate every complete assignment; the first minimum in row-major
    order is returned."""
    s = v.structure
    best = best_vals = None
    count = 0
    for vals in _space(v, cap):
        count += 1
        val = _value(v, vals)
        if best is None or s.key(val) < s.key(best):
            best, best_vals = val, vals
    return OptimumResult(best, dict(enumerate(best_vals)), count)


def brute_value(v: Vcsp, assignment: dict):
    if sorted(assignment) != list(range(v.n)):
        raise InputError("brute_value needs a complete assignment")
    return _value(v, tuple(assignment[i] for i in range(v.n)))


def brute_equivalent(v1: Vcsp, v2: Vcsp, cap: int = DEFAULT_CAP) -> bool:
    if (v1.structure, v1.names, v1.domains) != (v2.structure, v2.names, v2.domains):
        raise InputError("problems differ in structure, variables or domains")
    return all(_value(v1, vals) == _value(v2, vals) for vals in _space(v1, cap))


def brute_fairness(s: ValuationStructure) -> FairnessReport:
    """For every ``a <= b`` collect all ``g`` with ``g + a == b``.

    Unfair when some pair has no difference; ``mismatches`` lists pairs where
    the structure's own difference operator disagrees with the enumerated
    maximum.
    """
    elems = s.elements()
    if elems is None:
        raise CapabilityError(f"{s.describe()} is unbounded")
    elems = sorted(elems, key=s.key)
    rep = FairnessReport(fair=True, pairs=0)
    for bi, b in enumerate(elems):
        for a in reversed(elems[: bi + 1]):
            rep.pairs += 1
            diffs = [g for g in elems if s.combine(g, a) == b]
            if not diffs:
                if rep.fair:
                    rep.fair = False
                    rep.witness = (b, a)
                continue
            best = max(diffs, key=s.key)
            try:
                got = s.diff(b, a)
            except ArithmeticError:
                got = None
            if got != best:
                rep.mismatches.append((b, a, got, best))
    return rep


def absorbing_count(s: ValuationStructure) -> tuple[int, list]:
    elems = s.elements()
    if elems is None:
        raise CapabilityError(f"{s.describe()} is unbounded")
    found = [x for x in sorted(elems, key=s.key) if s.combine(x, x) == x]
    return len(found), found


def crisp_ac_reference(v: Vcsp) -> set[tuple[int, int]]:
    """Values removed by plain arc consistency on the underlying crisp CSP.

    Repeats full sweeps until nothing changes.  A value survives when it is
    not forbidden at the unary level and every constraint on its variable
    has an allowed tuple through it whose other values survive too.
    """
    s = v.structure
    alive = [[c != s.top for c in row] for row in v.unary]
    changed = True
    while changed:
        changed = False
        for scope, table in v.constraints.items():
            for k, i in enumerate(scope):
                for a in range(len(v.domains[i])):
                    if not alive[i][a]:
                        continue
                    ok = False
                    for t in itertools.product(*(range(len(v.domains[j])) for j in scope)):
                        if t[k] != a or table.cost(t) == s.top:
                            continue
                        if all(alive[j][t[m]] for m, j in enumerate(scope)):
                            ok = True
                            break
                    if not ok:
                        alive[i][a] = False
                        changed = True
    return {(i, a) for i, row in enumerate(alive) for a, ok in enumerate(row) if not ok}
