"""Generalised soft arc consistency: checkers, queue-driven enforcement,
the strictly monotonic shortcut and bounded closure enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import CapabilityError
from .model import Check, CostTable, OpCounts, Violation, Vcsp, f_min
from .transforms import ext_inplace, proj_inplace, to_delta
from .valuation import OrderedMax


@dataclass(frozen=True)
class QueueEntry:
    t: tuple
    scope: tuple
    alpha: object


class PropagationQueue:
    def __init__(self):
        self._items: deque[QueueEntry] = deque()
        self.pushes = 0

    def push(self, entry: QueueEntry) -> None:
        self.pushes += 1
        self._items.append(entry)

    def pop(self) -> QueueEntry:
        return self._items.popleft()

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)


def proj_ac(v: Vcsp, scope, i: int, a: int, q: PropagationQueue | None = None) -> bool:
    """ProjAC on dense or Delta tables; True if ``c_i(a)`` increased."""
    s = v.structure
    c = v.constraints[scope]
    pos = scope.index(i)
    beta = c.slice_min(pos, a)
    old = v.unary[i][a]
    new = s.combine(old, beta)
    if not s.lt(old, new):
        return False
    v.unary[i][a] = new
    c.shift_out(pos, a, beta)
    if q is not None:
        q.push(QueueEntry((a,), (i,), new))
    return True


def ext_ac(v: Vcsp, i: int, a: int, scope, q: PropagationQueue | None = None) -> bool:
    """ExtAC: raise tuples through ``(i, a)`` to their absorbing ceiling.

    Needs a dense table since it writes individual tuples.
    """
    s = v.structure
    c = v.constraints[scope]
    pos = scope.index(i)
    changed = False
    for t in c.tuples_with(pos, a):
        beta = s.combine_all(v.unary[j][t[k]] for k, j in enumerate(scope))
        cur = c.cost(t)
        gamma = s.diff(s.combine(cur, beta), beta)
        if s.lt(cur, gamma):
            assert s.is_absorbing(gamma), f"ExtAC wrote non-absorbing {gamma!r}"
            c.set(t, gamma)
            changed = True
            if q is not None:
                q.push(QueueEntry(t, scope, gamma))
    return changed


def gac_iteration_bound(v: Vcsp) -> int:
    e, r, d = v.e, v.r, v.d
    return e * r * d + (r + 1) * e * d**r * (2 * e * d**r + 2)


def _require_fair(v: Vcsp, what: str) -> None:
    if not v.structure.fair:
        raise CapabilityError(f"{what} needs a fair structure, got {v.structure.describe()}")


def enforce_gac(v: Vcsp, counts: OpCounts | None = None, guard: bool = True) -> Vcsp:
    """Return an equivalent generalised arc consistent copy of ``v``.

    Initial scan: variables ascending, values in domain order, scopes in
    lexicographic order, ExtAC then ProjAC.  With ``guard`` off, stale queue
    entries are processed anyway (useful as a cross-check).
    """
    _require_fair(v, "GAC enforcement")
    counts = counts if counts is not None else OpCounts()
    w = v.dense()
    q = PropagationQueue()
    for i in range(w.n):
        for a in range(len(w.domains[i])):
            for p in w.scopes_on(i):
                counts.ext += 1
                ext_ac(w, i, a, p, q)
                counts.proj += 1
                proj_ac(w, p, i, a, q)
    while q:
        entry = q.pop()
        counts.iterations += 1
        if guard and w.cost(entry.scope, entry.t) != entry.alpha:
            continue
        if len(entry.scope) == 1:
            i = entry.scope[0]
            for p in w.scopes_on(i):
                counts.ext += 1
                ext_ac(w, i, entry.t[0], p, q)
        else:
            for k, i in enumerate(entry.scope):
                counts.proj += 1
                proj_ac(w, entry.scope, i, entry.t[k], q)
    counts.pushes += q.pushes
    if guard:
        bound = gac_iteration_bound(w)
        assert counts.iterations <= bound, f"{counts.iterations} iterations exceed {bound}"
    return w


def is_gac(v: Vcsp) -> Check:
    """Both conditions for every constraint, scanned in scope order.

    1. ``c_P(t) == (c_P(t) + b) - b`` where ``b`` combines the unary costs of t;
    2. ``c_i(a) == min_t (c_i(a) + c_P(t, a))``.
    """
    _require_fair(v, "the GAC check")
    s = v.structure
    for p in v.scopes():
        c = v.constraints[p]
        for t in c.tuples():
            beta = s.combine_all(v.unary[j][t[k]] for k, j in enumerate(p))
            cur = c.cost(t)
            if s.diff(s.combine(cur, beta), beta) != cur:
                return Check(False, Violation(1, p, t=t))
        for k, i in enumerate(p):
            for a in range(len(v.domains[i])):
                u = v.unary[i][a]
                if s.min(s.combine(u, c.cost(t)) for t in c.tuples_with(k, a)) != u:
                    return Check(False, Violation(2, p, var=i, value=a))
    return Check(True)


def is_gac_strict(v: Vcsp) -> Check:
    """Characterisation valid for strictly monotonic structures.

    The underlying crisp problem is arc consistent (tuples through a
    forbidden value are forbidden, allowed values have allowed supports) and
    every allowed value has a bottom-cost tuple in each constraint.
    """
    s = v.structure
    top, bot = s.top, s.bottom
    for p in v.scopes():
        c = v.constraints[p]
        for t in c.tuples():
            if c.cost(t) != top and any(v.unary[j][t[k]] == top for k, j in enumerate(p)):
                return Check(False, Violation("forbidden", p, t=t))
        for k, i in enumerate(p):
            for a in range(len(v.domains[i])):
                if v.unary[i][a] == top:
                    continue
                costs = [c.cost(t) for t in c.tuples_with(k, a)]
                if all(x == top for x in costs):
                    return Check(False, Violation("support", p, var=i, value=a))
                if bot not in costs:
                    return Check(False, Violation("bottom", p, var=i, value=a))
    return Check(True)


def underlying_csp(v: Vcsp) -> Vcsp:
    """Crisp version over the two-level structure: 1 marks a forbidden tuple."""
    crisp = OrderedMax(2)
    top = v.structure.top
    out = Vcsp(crisp, v.names, v.domains)
    out.unary = [[int(c == top) for c in row] for row in v.unary]
    for p in v.scopes():
        c = v.constraints[p]
        out.constraints[p] = CostTable(crisp, p, c.sizes, [int(x == top) for x in c.dense()])
    return out


def _crisp_ac(v: Vcsp) -> list[list[bool]]:
    top = v.structure.top
    alive = [[c != top for c in row] for row in v.unary]
    work = deque(v.scopes())
    queued = set(work)
    while work:
        p = work.popleft()
        queued.discard(p)
        c = v.constraints[p]
        lost = []
        for k, i in enumerate(p):
            for a in range(len(v.domains[i])):
                if not alive[i][a]:
                    continue
                if not any(
                    c.cost(t) != top and all(alive[j][t[m]] for m, j in enumerate(p))
                    for t in c.tuples_with(k, a)
                ):
                    alive[i][a] = False
                    lost.append(i)
        for i in lost:
            for other in v.scopes_on(i):
                if other not in queued:
                    queued.add(other)
                    work.append(other)
    return alive


def _ac_underlying_inplace(w: Vcsp, counts: OpCounts) -> None:
    top = w.structure.top
    alive = _crisp_ac(w)
    for i, row in enumerate(alive):
        for a, ok in enumerate(row):
            if ok:
                continue
            w.unary[i][a] = top
            for p in w.scopes_on(i):
                counts.ext += 1
                ext_inplace(w, i, a, p)


def enforce_ac_underlying(v: Vcsp, counts: OpCounts | None = None) -> Vcsp:
    """Arc consistency on the underlying CSP, made explicit in the costs.

    Unsupported values are raised to top and every forbidden value's top
    is extended into its constraints.
    """
    w = v.copy()
    _ac_underlying_inplace(w, counts if counts is not None else OpCounts())
    return w


def enforce_sac_strict(v: Vcsp, counts: OpCounts | None = None) -> Vcsp:
    """GAC for strictly monotonic structures: crisp AC, then one Proj sweep."""
    if not v.structure.strictly_monotonic:
        raise CapabilityError(
            f"{v.structure.describe()} is not strictly monotonic; use enforce_gac"
        )
    counts = counts if counts is not None else OpCounts()
    w = to_delta(v)
    _ac_underlying_inplace(w, counts)
    for p in w.scopes():
        for i in p:
            for a in range(len(w.domains[i])):
                counts.proj += 1
                proj_inplace(w, p, i, a)
    return w


@dataclass
class Closure:
    problem: Vcsp
    f_min: object
    path: tuple


@dataclass
class ClosureReport:
    closures: list = field(default_factory=list)
    complete: bool = True
    states: int = 0

    @property
    def f_mins(self) -> list:
        return [c.f_min for c in self.closures]

    def max_f_min(self, s):
        return s.max(self.f_mins) if self.closures else None

    def min_f_min(self, s):
        return s.min(self.f_mins) if self.closures else None


def _moves(w: Vcsp):
    for p in w.scopes():
        for i in p:
            for a in range(len(w.domains[i])):
                nxt = w.copy()
                if ext_ac(nxt, i, a, p):
                    yield ("ext", i, a, p), nxt
                nxt = w.copy()
                if proj_ac(nxt, p, i, a):
                    yield ("proj", p, i, a), nxt


def enumerate_closures(v: Vcsp, op_budget: int, max_states: int = 200_000) -> ClosureReport:
    """Breadth-first search over ProjAC/ExtAC sequences of length <= op_budget.

    Only operations that change the problem count.  States with no such
    operation are the GAC fixpoints; each distinct one is reported once,
    with the first (shortest) path reaching it.  The report is incomplete if
    some reachable state still had moves when the budget or the state cap
    ran out.
    """
    _require_fair(v, "closure enumeration")
    start = v.dense()
    rep = ClosureReport()
    seen = {start.snapshot()}
    frontier = [(start, ())]
    depth = 0
    while frontier:
        nxt_frontier = []
        for state, path in frontier:
            moves = list(_moves(state))
            if not moves:
                rep.closures.append(Closure(state, f_min(state), path))
                continue
            if depth >= op_budget or len(seen) >= max_states:
                rep.complete = False
                continue
            for op, nxt in moves:
                key = nxt.snapshot()
                if key not in seen:
                    seen.add(key)
                    nxt_frontier.append((nxt, path + (op,)))
        frontier = nxt_frontier
        depth += 1
    rep.states = len(seen)
    return rep
