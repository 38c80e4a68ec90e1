"""Seeded random instances and transformation sequences for testing."""

from __future__ import annotations

import itertools
import random

from .model import Vcsp
from .transforms import ext_inplace, proj_inplace
from .valuation import INF, BoundedSum, ValuationStructure, Weighted

LABELS = "abcdefgh"


def random_cost(rng: random.Random, s: ValuationStructure, w_max: int = 4, p_inf: float = 0.15,
                p_zero: float = 0.4):
    if isinstance(s, Weighted):
        if rng.random() < p_inf:
            return INF
        return 0 if rng.random() < p_zero else rng.randint(1, w_max)
    if rng.random() < p_zero:
        return s.bottom
    elems = s.elements()
    if elems is None:
        return s.sample(rng)
    return rng.choice(elems)


def _empty(rng, s, n, d_max, d_min=2) -> Vcsp:
    names = [f"x{k}" for k in range(n)]
    domains = [LABELS[: rng.randint(d_min, d_max)] for _ in range(n)]
    return Vcsp(s, names, [list(dom) for dom in domains])


def _fill(rng, v: Vcsp, scope, **kw) -> None:
    s = v.structure
    sizes = [len(v.domains[i]) for i in scope]
    table = [random_cost(rng, s, **kw) for _ in itertools.product(*map(range, sizes))]
    v.set_table(scope, table)


def _unaries(rng, v: Vcsp, p_unary: float, **kw) -> None:
    for i in range(v.n):
        if rng.random() < p_unary:
            v.unary[i] = [random_cost(rng, v.structure, **kw) for _ in v.domains[i]]


def random_vcsp(rng: random.Random, s: ValuationStructure | None = None, *, n_max: int = 5,
                d_max: int = 3, e_max: int = 6, p_ternary: float = 0.0, p_unary: float = 0.6,
                **kw) -> Vcsp:
    s = s or Weighted()
    n = rng.randint(2, n_max)
    v = _empty(rng, s, n, d_max)
    scopes = list(itertools.combinations(range(n), 2))
    rng.shuffle(scopes)
    e = rng.randint(1, min(e_max, len(scopes)))
    chosen = scopes[:e]
    if n >= 3 and p_ternary and rng.random() < p_ternary:
        chosen[-1] = tuple(sorted(rng.sample(range(n), 3)))
    for p in chosen:
        if p not in v.constraints:
            _fill(rng, v, p, **kw)
    _unaries(rng, v, p_unary, **kw)
    return v


def random_tree(rng: random.Random, s: ValuationStructure | None = None, *, n_max: int = 8,
                d_max: int = 3, p_unary: float = 0.6, **kw) -> Vcsp:
    """Random tree-shaped binary problem; variable indices are shuffled so the
    tree is not always rooted at the first variable."""
    s = s or Weighted()
    n = rng.randint(1, n_max)
    v = _empty(rng, s, n, d_max, d_min=1)
    perm = list(range(n))
    rng.shuffle(perm)
    for k in range(1, n):
        i, j = perm[rng.randrange(k)], perm[k]
        _fill(rng, v, (min(i, j), max(i, j)), **kw)
    _unaries(rng, v, p_unary, **kw)
    return v


def random_ops(rng: random.Random, v: Vcsp, length: int) -> list[tuple]:
    """Random proj/ext operations as ``(kind, scope, var, value)``."""
    scopes = v.scopes()
    if not scopes:
        return []
    out = []
    for _ in range(length):
        p = rng.choice(scopes)
        i = rng.choice(p)
        a = rng.randrange(len(v.domains[i]))
        out.append((rng.choice(("proj", "ext")), p, i, a))
    return out


def apply_ops(v: Vcsp, ops) -> Vcsp:
    w = v.copy()
    for kind, p, i, a in ops:
        if kind == "proj":
            proj_inplace(w, p, i, a)
        else:
            ext_inplace(w, i, a, p)
    return w


def corpus(seed: int, count: int, s: ValuationStructure | None = None, **kw) -> list[Vcsp]:
    rng = random.Random(seed)
    return [random_vcsp(rng, s, **kw) for _ in range(count)]


def tree_corpus(seed: int, count: int) -> list[Vcsp]:
    """Alternating Weighted and BoundedSum(5) trees."""
    rng = random.Random(seed)
    structures = (Weighted(), BoundedSum(5))
    return [random_tree(rng, structures[k % 2]) for k in range(count)]
