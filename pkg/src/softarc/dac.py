"""Directional arc consistency on binary problems, tree solving and the
pairwise irreducibility harness."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CapabilityError, CorruptionError, InputError
from .model import Check, OpCounts, Violation, Vcsp, f_min, require_binary, subproblem
from .transforms import ext_inplace, proj_inplace, to_delta


def parse_order(v: Vcsp, order: Sequence) -> list[int]:
    """Variable order as indices; accepts names or indices, must be a permutation."""
    idx = [v.var(x) for x in order]
    if sorted(idx) != list(range(v.n)):
        raise InputError(f"order {list(order)} is not a permutation of the variables")
    return idx


def _pair_cost(v: Vcsp, i: int, a: int, j: int, b: int):
    if i < j:
        return v.constraints[(i, j)].cost((a, b))
    return v.constraints[(j, i)].cost((b, a))


def _dac_value_ok(v: Vcsp, i: int, a: int, j: int) -> bool:
    s = v.structure
    u = v.unary[i][a]
    best = s.min(
        s.combine_all((u, _pair_cost(v, i, a, j, b), v.unary[j][b]))
        for b in range(len(v.domains[j]))
    )
    return best == u


def enforce_dac(v: Vcsp, order: Sequence, counts: OpCounts | None = None,
                check: bool = True) -> Vcsp:
    """Push costs towards earlier variables of ``order``.

    For each position from the second-to-last down to the first, and each
    later neighbour ``j``: extend all of ``c_j`` into ``c_ij`` then project
    ``c_ij`` onto every value of ``i``.  Uses Delta tables; every extension
    into a constraint precedes every projection from it, which keeps them
    exact for any fair structure.
    """
    require_binary(v, "DAC")
    if not v.structure.fair:
        raise CapabilityError(f"DAC needs a fair structure, got {v.structure.describe()}")
    order = parse_order(v, order)
    counts = counts if counts is not None else OpCounts()
    before = counts.proj + counts.ext
    w = to_delta(v)
    for k in range(w.n - 2, -1, -1):
        i = order[k]
        for j in order[k + 1:]:
            p = (min(i, j), max(i, j))
            if p not in w.constraints:
                continue
            for b in range(len(w.domains[j])):
                counts.ext += 1
                ext_inplace(w, j, b, p)
            for a in range(len(w.domains[i])):
                counts.proj += 1
                proj_inplace(w, p, i, a)
            if check:
                for a in range(len(w.domains[i])):
                    if not _dac_value_ok(w, i, a, j):
                        raise CorruptionError(f"DAC assertion failed on {p} at ({i}, {a})")
    calls = counts.proj + counts.ext - before
    assert calls <= 2 * w.e * w.d, f"{calls} proj/ext calls exceed 2ed = {2 * w.e * w.d}"
    return w


def is_dac(v: Vcsp, order: Sequence) -> Check:
    require_binary(v, "the DAC check")
    order = parse_order(v, order)
    pos = {x: k for k, x in enumerate(order)}
    for p in v.scopes():
        i, j = sorted(p, key=pos.__getitem__)
        for a in range(len(v.domains[i])):
            if not _dac_value_ok(v, i, a, j):
                return Check(False, Violation("dac", p, var=i, value=a))
    return Check(True)


@dataclass
class TreeStructure:
    root: int
    parent: dict
    order: list
    children: dict = field(default_factory=dict)


def tree_structure(v: Vcsp, root) -> TreeStructure:
    """Rooted spanning tree given by the constraint graph; InputError if the
    graph is not a tree."""
    require_binary(v, "tree solving")
    r = v.var(root)
    if v.e != v.n - 1:
        raise InputError(f"constraint graph has {v.e} edges; a tree on {v.n} variables has {v.n - 1}")
    adj = {i: [] for i in range(v.n)}
    for i, j in v.scopes():
        adj[i].append(j)
        adj[j].append(i)
    parent = {r: None}
    children = {i: [] for i in range(v.n)}
    order = [r]
    todo = deque([r])
    while todo:
        i = todo.popleft()
        for j in adj[i]:
            if j not in parent:
                parent[j] = i
                children[i].append(j)
                order.append(j)
                todo.append(j)
    if len(order) != v.n:
        raise InputError("constraint graph is not connected")
    return TreeStructure(r, parent, order, children)


def solve_tree(v: Vcsp, tree: TreeStructure | object, counts: OpCounts | None = None):
    """Optimal valuation and a witness assignment of a tree-structured problem.

    ``tree`` is a TreeStructure or a root variable.  Ties go to the smallest
    value index.
    """
    if not isinstance(tree, TreeStructure):
        tree = tree_structure(v, tree)
    s = v.structure
    w = enforce_dac(v, tree.order, counts)
    root_row = w.unary[tree.root]
    best = min(range(len(root_row)), key=lambda a: s.key(root_row[a]))
    assign = {tree.root: best}
    for j in tree.order[1:]:
        p = tree.parent[j]
        a = assign[p]
        costs = [
            s.combine_all((w.unary[p][a], _pair_cost(w, p, a, j, b), w.unary[j][b]))
            for b in range(len(w.domains[j]))
        ]
        assign[j] = min(range(len(costs)), key=lambda b: s.key(costs[b]))
    return root_row[best], dict(sorted(assign.items()))


@dataclass
class Improvement:
    scope: tuple
    ops: tuple
    f_min: object


@dataclass
class IrreducibilityReport:
    base: object
    improvements: list = field(default_factory=list)
    exhaustive: bool = True
    states: int = 0

    @property
    def irreducible(self) -> bool:
        return not self.improvements


def _local_ops(local: Vcsp):
    p = (0, 1)
    for i in p:
        for a in range(len(local.domains[i])):
            yield ("proj", i, a)
            yield ("ext", i, a)


def _apply(local: Vcsp, op) -> Vcsp | None:
    kind, i, a = op
    out = local.copy()
    if kind == "proj":
        amount = proj_inplace(out, (0, 1), i, a)
    else:
        amount = ext_inplace(out, i, a, (0, 1))
    if amount == local.structure.bottom:
        return None
    return out


def check_irreducibility(v: Vcsp, depth: int, seed=None, max_states: int = 50_000,
                         samples: int = 2_000, limit: int = 100) -> IrreducibilityReport:
    """Look for Proj/Ext sequences on one constraint and its two variables
    that raise f_min.

    Every constraint ``c_ij`` is searched breadth-first up to ``depth``
    operations; a state's f_min is the untouched part of the problem combined
    with the local minima.  If a pair's state space exceeds ``max_states`` the
    rest is sampled with random sequences (``seed`` required) and the report
    is flagged non-exhaustive.  This only tests Proj/Ext-generated
    transformations.
    """
    require_binary(v, "the irreducibility check")
    s = v.structure
    base = f_min(v)
    rep = IrreducibilityReport(base)
    for p in v.scopes():
        i, j = p
        rest = s.bottom
        for k, row in enumerate(v.unary):
            if k not in p:
                rest = s.combine(rest, s.min(row))
        for q in v.scopes():
            if q != p:
                rest = s.combine(rest, s.min(v.constraints[q].dense()))
        local = subproblem(v, p)
        names = {0: v.names[i], 1: v.names[j]}
        labels = {0: v.domains[i], 1: v.domains[j]}

        def record(state, path):
            fm = s.combine(rest, f_min(state))
            if s.lt(base, fm) and len(rep.improvements) < limit:
                ops = tuple((kind, names[x], labels[x][a]) for kind, x, a in path)
                rep.improvements.append(Improvement(tuple(v.names[x] for x in p), ops, fm))

        seen = {local.snapshot()}
        frontier = [(local, ())]
        overflow = False
        for _ in range(depth):
            nxt = []
            for state, path in frontier:
                for op in _local_ops(state):
                    new = _apply(state, op)
                    if new is None:
                        continue
                    key = new.snapshot()
                    if key in seen:
                        continue
                    seen.add(key)
                    record(new, path + (op,))
                    nxt.append((new, path + (op,)))
                    if len(seen) >= max_states:
                        overflow = True
                        break
                if overflow:
                    break
            frontier = nxt
            if overflow or not frontier:
                break
        rep.states += len(seen)
        if overflow:
            if seed is None:
                raise InputError("state cap reached; pass a seed to sample the remainder")
            rep.exhaustive = False
            rng = random.Random(seed)
            ops = list(_local_ops(local))
            for _ in range(samples):
                state, path = local, ()
                for _ in range(rng.randint(1, depth)):
                    op = rng.choice(ops)
                    new = _apply(state, op)
                    if new is not None:
                        state, path = new, path + (op,)
                record(state, path)
    return rep
