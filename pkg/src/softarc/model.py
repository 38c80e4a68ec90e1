"""VCSP data model: variables, domains, cost tables and assignment valuation.

Variables are dense indices ``0..n-1`` carrying display names; values are
indices into each variable's ordered domain.  Every variable owns a unary
table (all bottom unless given).  Non-unary constraints are keyed by their
scope, a strictly increasing tuple of variable indices; tables are row-major
over that scope order.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapabilityError, InputError, SizeError
from .valuation import ValuationStructure

Assignment = dict  # variable index -> value index

MAX_TABLE = 10**6
DEFAULT_CAP = 10**6


def _strides(sizes: Sequence[int]) -> tuple[int, ...]:
    out = [1] * len(sizes)
    for k in range(len(sizes) - 2, -1, -1):
        out[k] = out[k + 1] * sizes[k + 1]
    return tuple(out)


class CostTable:
    """Dense cost function over a scope."""

    backend = "dense"

    def __init__(self, structure: ValuationStructure, scope: Sequence[int],
                 sizes: Sequence[int], table: list):
        self.structure = structure
        self.scope = tuple(scope)
        self.sizes = tuple(sizes)
        self.strides = _strides(self.sizes)
        if len(table) != math.prod(self.sizes):
            raise InputError(
                f"table for scope {self.scope} has {len(table)} entries, "
                f"expected {math.prod(self.sizes)}"
            )
        self.table = table

    @classmethod
    def filled(cls, structure, scope, sizes, value=None) -> "CostTable":
        n = math.prod(sizes)
        if n > MAX_TABLE:
            raise SizeError(f"dense table of {n} entries exceeds {MAX_TABLE}")
        if value is None:
            value = structure.bottom
        return cls(structure, scope, sizes, [value] * n)

    def offset(self, t: Sequence[int]) -> int:
        return sum(a * s for a, s in zip(t, self.strides))

    def cost(self, t: Sequence[int]):
        return self.table[self.offset(t)]

    def set(self, t: Sequence[int], value) -> None:
        self.table[self.offset(t)] = value

    def tuples(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(s) for s in self.sizes))

    def tuples_with(self, pos: int, a: int) -> Iterator[tuple[int, ...]]:
        ranges = [range(s) for s in self.sizes]
        ranges[pos] = (a,)
        return itertools.product(*ranges)

    def slice_min(self, pos: int, a: int):
        """Minimum cost over tuples with ``t[pos] == a``; first minimum in
        row-major order."""
        s = self.structure
        return s.min(self.cost(t) for t in self.tuples_with(pos, a))

    def shift_in(self, pos: int, a: int, alpha) -> None:
        """Combine ``alpha`` into every tuple with ``t[pos] == a``."""
        comb = self.structure.combine
        for t in self.tuples_with(pos, a):
            k = self.offset(t)
            self.table[k] = comb(self.table[k], alpha)

    def shift_out(self, pos: int, a: int, beta) -> None:
        """Subtract ``beta`` from every tuple with ``t[pos] == a``."""
        diff = self.structure.diff
        for t in self.tuples_with(pos, a):
            k = self.offset(t)
            self.table[k] = diff(self.table[k], beta)

    def dense(self) -> list:
        return list(self.table)

    def copy(self) -> "CostTable":
        return CostTable(self.structure, self.scope, self.sizes, list(self.table))

    def storage(self) -> int:
        return len(self.table)

    def __repr__(self):
        return f"CostTable(scope={self.scope}, sizes={self.sizes})"


class Vcsp:
    """A valued CSP over one valuation structure.

    ``unary[i][a]`` is the unary cost of value ``a`` of variable ``i``;
    ``constraints`` maps sorted scopes (arity >= 2) to cost tables.
    """

    def __init__(self, structure: ValuationStructure, names: Sequence[str],
                 domains: Sequence[Sequence[str]]):
        if len(names) != len(domains):
            raise InputError("names and domains differ in length")
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {list(names)}")
        for name, dom in zip(names, domains):
            if not dom:
                raise InputError(f"variable {name!r} has an empty domain")
            if len(set(dom)) != len(dom):
                raise InputError(f"variable {name!r} has duplicate values")
        self.structure = structure
        self.names = [str(x) for x in names]
        self.domains = [tuple(str(v) for v in dom) for dom in domains]
        self.unary = [[structure.bottom] * len(dom) for dom in self.domains]
        self.constraints: dict[tuple[int, ...], CostTable] = {}

    # -- construction ----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def d(self) -> int:
        return max((len(dom) for dom in self.domains), default=0)

    @property
    def e(self) -> int:
        return len(self.constraints)

    @property
    def r(self) -> int:
        return max((len(p) for p in self.constraints), default=1)

    def var(self, name) -> int:
        if isinstance(name, int) and not isinstance(name, bool) and 0 <= name < self.n:
            return name
        try:
            return self.names.index(str(name))
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def val(self, i: int, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if 0 <= label < len(self.domains[i]):
                return label
        try:
            return self.domains[i].index(str(label))
        except ValueError:
            raise InputError(f"value {label!r} not in domain of {self.names[i]!r}") from None

    def add_constraint(self, scope: Sequence, costs: Mapping | None = None,
                       default=None) -> None:
        """Add a cost function given sparse ``{tuple of labels: cost}`` entries.

        ``scope`` may name variables in any order; the stored scope is sorted
        and tuples are permuted to match.  A single-variable scope replaces the
        unary table.
        """
        s = self.structure
        idx = [self.var(x) for x in scope]
        if len(set(idx)) != len(idx):
            raise InputError(f"scope {list(scope)} repeats a variable")
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        key = tuple(idx[k] for k in order)
        default = s.bottom if default is None else s.validate(default)
        entries = {}
        for tup, cost in (costs or {}).items():
            if not isinstance(tup, (tuple, list)):
                tup = (tup,)
            if len(tup) != len(idx):
                raise InputError(f"tuple {tup} does not match scope {list(scope)}")
            vals = tuple(self.val(idx[k], tup[k]) for k in order)
            entries[vals] = s.validate(cost)
        if len(key) == 1:
            row = [default] * len(self.domains[key[0]])
            for (a,), c in entries.items():
                row[a] = c
            self.unary[key[0]] = row
            return
        if key in self.constraints:
            raise InputError(f"duplicate constraint on scope {[self.names[i] for i in key]}")
        table = CostTable.filled(s, key, [len(self.domains[i]) for i in key], default)
        for t, c in entries.items():
            table.set(t, c)
        self.constraints[key] = table

    def set_table(self, scope: Sequence[int], table: list) -> None:
        """Install a dense row-major table on a sorted scope of indices."""
        key = tuple(scope)
        if list(key) != sorted(set(key)) or len(key) < 2:
            raise InputError(f"scope {key} must be strictly increasing with arity >= 2")
        self.constraints[key] = CostTable(
            self.structure, key, [len(self.domains[i]) for i in key], list(table)
        )

    # -- access ----------------------------------------------------------------
    def scopes(self) -> list[tuple[int, ...]]:
        return sorted(self.constraints)

    def scopes_on(self, i: int) -> list[tuple[int, ...]]:
        return [p for p in self.scopes() if i in p]

    def cost(self, scope: tuple[int, ...], t: Sequence[int]):
        if len(scope) == 1:
            return self.unary[scope[0]][t[0]]
        return self.constraints[scope].cost(t)

    def constraint(self, scope) -> CostTable:
        key = tuple(sorted(self.var(x) for x in scope))
        try:
            return self.constraints[key]
        except KeyError:
            raise InputError(f"no constraint on scope {list(scope)}") from None

    def copy(self) -> "Vcsp":
        out = Vcsp.__new__(Vcsp)
        out.structure = self.structure
        out.names = list(self.names)
        out.domains = list(self.domains)
        out.unary = [list(row) for row in self.unary]
        out.constraints = {p: c.copy() for p, c in self.constraints.items()}
        return out

    def dense(self) -> "Vcsp":
        """Copy with every constraint materialised as a dense table."""
        out = self.copy()
        out.constraints = {
            p: CostTable(self.structure, c.scope, c.sizes, c.dense())
            for p, c in self.constraints.items()
        }
        return out

    def signature(self):
        return (self.structure, tuple(self.names), tuple(self.domains))

    def snapshot(self):
        """Hashable content: structure, variables, unary rows, effective tables."""
        return (
            self.signature(),
            tuple(tuple(row) for row in self.unary),
            tuple((p, tuple(self.constraints[p].dense())) for p in self.scopes()),
        )

    def __eq__(self, other):
        if not isinstance(other, Vcsp):
            return NotImplemented
        return self.snapshot() == other.snapshot()

    def __hash__(self):
        return hash(self.snapshot())

    def storage(self) -> int:
        return sum(c.storage() for c in self.constraints.values())

    def label(self, t: Mapping[int, int]) -> dict[str, str]:
        return {self.names[i]: self.domains[i][a] for i, a in sorted(t.items())}

    def assignment(self, mapping: Mapping) -> Assignment:
        """Translate ``{name: label}`` into index form, validating values."""
        out = {}
        for name, label in mapping.items():
            i = self.var(name)
            out[i] = self.val(i, label)
        return out

    def is_binary(self) -> bool:
        return all(len(p) == 2 for p in self.constraints)

    def __repr__(self):
        return (
            f"Vcsp({self.structure.describe()}, n={self.n}, d={self.d}, "
            f"e={self.e}, r={self.r})"
        )


def _check_assignment(v: Vcsp, t: Mapping[int, int]) -> None:
    for i, a in t.items():
        if not (isinstance(i, int) and 0 <= i < v.n):
            raise InputError(f"unknown variable index {i!r}")
        if not (isinstance(a, int) and 0 <= a < len(v.domains[i])):
            raise InputError(f"value {a!r} outside the domain of {v.names[i]!r}")


def valuation_of(v: Vcsp, t: Mapping[int, int]):
    """Combine the costs of every constraint whose scope is covered by ``t``."""
    _check_assignment(v, t)
    s = v.structure
    acc = s.bottom
    for i, a in t.items():
        acc = s.combine(acc, v.unary[i][a])
    for p, c in v.constraints.items():
        if all(i in t for i in p):
            acc = s.combine(acc, c.cost(tuple(t[i] for i in p)))
    return acc


def project_assignment(t: Mapping[int, int], variables: Iterable[int]) -> Assignment:
    variables = list(variables)
    missing = [i for i in variables if i not in t]
    if missing:
        raise InputError(f"assignment does not cover variables {missing}")
    return {i: t[i] for i in variables}


def subproblem(v: Vcsp, J: Iterable) -> Vcsp:
    """Restriction to variables ``J`` keeping constraints with scope inside ``J``.

    Variables keep their relative order and are renumbered densely.
    """
    keep = sorted({v.var(x) for x in J})
    renum = {old: new for new, old in enumerate(keep)}
    out = Vcsp(v.structure, [v.names[i] for i in keep], [v.domains[i] for i in keep])
    out.unary = [list(v.unary[i]) for i in keep]
    for p, c in v.constraints.items():
        if all(i in renum for i in p):
            q = tuple(renum[i] for i in p)
            out.constraints[q] = CostTable(v.structure, q, c.sizes, c.dense())
    return out


def f_min(v: Vcsp):
    """Lower bound: combination of every table's minimum entry."""
    s = v.structure
    acc = s.bottom
    for row in v.unary:
        acc = s.combine(acc, s.min(row))
    for p in v.scopes():
        acc = s.combine(acc, s.min(v.constraints[p].dense()))
    return acc


def complete_assignments(v: Vcsp, cap: int = DEFAULT_CAP) -> Iterator[Assignment]:
    total = math.prod(len(d) for d in v.domains)
    if total > cap:
        raise SizeError(f"{total} complete assignments exceed the cap of {cap}")
    for vals in itertools.product(*(range(len(d)) for d in v.domains)):
        yield dict(enumerate(vals))


def equivalent(v1: Vcsp, v2: Vcsp, cap: int = DEFAULT_CAP) -> bool:
    """True iff every complete assignment has the same valuation in both."""
    if v1.signature() != v2.signature():
        raise InputError("problems differ in structure, variables or domains")
    return all(valuation_of(v1, t) == valuation_of(v2, t) for t in complete_assignments(v1, cap))


def require_binary(v: Vcsp, what: str) -> None:
    bad = [p for p in v.constraints if len(p) != 2]
    if bad:
        raise CapabilityError(f"{what} needs a binary problem; found scopes {bad}")


class Violation:
    """Where a consistency property fails (indices, not labels)."""

    def __init__(self, condition, scope, *, t=None, var=None, value=None):
        self.condition = condition
        self.scope = tuple(scope)
        self.t = None if t is None else tuple(t)
        self.var = var
        self.value = value

    def describe(self, v: Vcsp) -> dict:
        out = {"condition": self.condition, "scope": [v.names[i] for i in self.scope]}
        if self.t is not None:
            out["tuple"] = [v.domains[i][a] for i, a in zip(self.scope, self.t)]
        if self.var is not None:
            out["variable"] = v.names[self.var]
            out["value"] = v.domains[self.var][self.value]
        return out

    def __eq__(self, other):
        return isinstance(other, Violation) and vars(self) == vars(other)

    def __repr__(self):
        fields = ", ".join(f"{k}={val!r}" for k, val in vars(self).items() if val is not None)
        return f"Violation({fields})"


class Check:
    """Outcome of a property check; truthy iff the property holds."""

    def __init__(self, ok: bool, witness: Violation | None = None):
        self.ok = ok
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Check(ok={self.ok}, witness={self.witness!r})"


class OpCounts:
    """Operation counters reported by enforcement algorithms."""

    def __init__(self):
        self.proj = 0
        self.ext = 0
        self.iterations = 0
        self.pushes = 0

    def as_dict(self) -> dict:
        return dict(vars(self))

    def __repr__(self):
        return f"OpCounts({self.as_dict()})"
