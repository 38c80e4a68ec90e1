"""Valuation structures: ordered commutative monoids with a maximal difference.

Every cost in a problem lives in one :class:`ValuationStructure`.  Structures
work on plain hashable Python values (``3``, ``math.inf``, ``(12, 0)``) for
speed; :class:`Valuation` wraps a value together with its structure for
user-facing arithmetic that must reject cross-structure mixing.

Shipped structures:

* :class:`Weighted` -- naturals plus infinity under addition (Max-CSP).
* :class:`BoundedSum` -- ``{0..k}`` under capped addition.
* :class:`OrderedMax` -- a finite chain under ``max`` (classical and
  possibilistic CSP).
* :class:`DrivingPenalty` -- penalty points that saturate at 12, plus
  cumulative suspension years.
* :class:`CappedPrison` -- bounded sentences, life, and death (two life
  sentences combine to death).
* :class:`FinancialLife` -- an *unfair* structure kept as a negative example.
"""

from __future__ import annotations

import enum
import math
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable

from .errors import (
    CapabilityError,
    InputError,
    OrderViolation,
    StructureMismatch,
    UnfairStructure,
)

INF = math.inf

_PAIR_RE = re.compile(r"^\(\s*(\w+)\s*,\s*(\w+)\s*\)$")


class ValuationStructure:
    """Base class.  Subclasses are frozen dataclasses holding their parameters."""

    kind: str = ""
    fair: bool = True

    # -- primitives every structure supplies ---------------------------------
    @property
    def bottom(self) -> Hashable:
        raise NotImplementedError

    @property
    def top(self) -> Hashable:
        raise NotImplementedError

    def combine(self, a, b):
        raise NotImplementedError

    def _diff(self, b, a):
        """Maximal difference for ``a <= b``; order already checked."""
        raise NotImplementedError

    def key(self, v):
        """Sort key realising the total order."""
        raise NotImplementedError

    def contains(self, v) -> bool:
        raise NotImplementedError

    def elements(self) -> list | None:
        """Carrier in increasing order, or ``None`` for unbounded carriers."""
        return None

    def params(self) -> dict[str, Any]:
        return {}

    def parse(self, token):
        raise NotImplementedError

    def format(self, v):
        raise NotImplementedError

    def sample(self, rng: random.Random):
        elems = self.elements()
        return rng.choice(elems)

    # -- derived operations ----------------------------------------------------
    def diff(self, b, a):
        """``b - a``: the maximal ``g`` with ``g + a == b``."""
        if self.lt(b, a):
            raise OrderViolation(
                f"{self.format(b)} - {self.format(a)}: subtrahend exceeds minuend"
            )
        return self._diff(b, a)

    def leq(self, a, b) -> bool:
        return self.key(a) <= self.key(b)

    def lt(self, a, b) -> bool:
        return self.key(a) < self.key(b)

    def min(self, values: Iterable):
        return min(values, key=self.key)

    def max(self, values: Iterable):
        return max(values, key=self.key)

    def combine_all(self, values: Iterable):
        acc = self.bottom
        for v in values:
            acc = self.combine(acc, v)
        return acc

    def is_absorbing(self, v) -> bool:
        return self.combine(v, v) == v

    def max_absorbing_leq(self, v):
        if not self.fair:
            raise UnfairStructure(f"{self.describe()} has no maximal differences")
        return self.diff(v, v)

    def validate(self, v):
        if not self.contains(v):
            raise InputError(f"{v!r} is not a valuation of {self.describe()}")
        return v

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.kind}({args})"

    def spec(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params()}

    def __call__(self, x) -> "Valuation":
        if isinstance(x, str):
            x = self.parse(x)
        return Valuation(self, self.validate(x))

    # -- classification --------------------------------------------------------
    @cached_property
    def tables(self) -> "FiniteTables":
        elems = self.elements()
        if elems is None:
            raise CapabilityError(f"{self.describe()} has no finite enumerator")
        return FiniteTables.build(self, elems)

    @cached_property
    def idempotent(self) -> bool:
        t = self.tables
        return all(t.comb[i][i] == i for i in range(t.size))

    @cached_property
    def strictly_monotonic(self) -> bool:
        t = self.tables
        top = t.size - 1
        for hi in range(t.size):
            for lo in range(hi):
                for g in range(top):
                    if t.comb[hi][g] <= t.comb[lo][g]:
                        return False
        return True


@dataclass(frozen=True)
class FiniteTables:
    """Index tables for a finite carrier; index order equals valuation order."""

    elements: list
    index: dict
    comb: list

    @property
    def size(self) -> int:
        return len(self.elements)

    @classmethod
    def build(cls, s: ValuationStructure, elems: list) -> "FiniteTables":
        elems = sorted(elems, key=s.key)
        index = {v: k for k, v in enumerate(elems)}
        comb = [[index[s.combine(a, b)] for b in elems] for a in elems]
        return cls(elems, index, comb)


@dataclass(frozen=True)
class Valuation:
    """A value tagged with its structure; supports ``+``, ``-`` and ordering."""

    structure: ValuationStructure
    value: Hashable

    def _check(self, other) -> "Valuation":
        if not isinstance(other, Valuation):
            raise StructureMismatch(f"cannot mix Valuation with {type(other).__name__}")
        if other.structure != self.structure:
            raise StructureMismatch(
                f"{self.structure.describe()} vs {other.structure.describe()}"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        return Valuation(self.structure, self.structure.combine(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return Valuation(self.structure, self.structure.diff(self.value, other.value))

    def __lt__(self, other):
        other = self._check(other)
        return self.structure.lt(self.value, other.value)

    def __le__(self, other):
        other = self._check(other)
        return self.structure.leq(self.value, other.value)

    def __gt__(self, other):
        return self._check(other).__lt__(self)

    def __ge__(self, other):
        return self._check(other).__le__(self)

    def __str__(self):
        return str(self.structure.format(self.value))


def combine(a: Valuation, b: Valuation) -> Valuation:
    return a + b


def difference(b: Valuation, a: Valuation) -> Valuation:
    return b - a


def is_absorbing(v: Valuation) -> bool:
    return v.structure.is_absorbing(v.value)


def max_absorbing_leq(v: Valuation) -> Valuation:
    return Valuation(v.structure, v.structure.max_absorbing_leq(v.value))


# ---------------------------------------------------------------------------
# concrete structures


def _parse_int(token) -> int:
    if isinstance(token, bool):
        raise InputError(f"boolean {token!r} is not a cost")
    if isinstance(token, int):
        return token
    if isinstance(token, str) and token.strip().lstrip("+").isdigit():
        return int(token)
    raise InputError(f"unparseable cost {token!r}")


def _is_nat(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


@dataclass(frozen=True)
class Weighted(ValuationStructure):
    """Naturals with infinity; ``+`` with infinity absorbing."""

    kind = "weighted"

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return INF

    def combine(self, a, b):
        return a + b

    def _diff(self, b, a):
        if b == INF:
            return INF
        return b - a

    def key(self, v):
        return v

    def contains(self, v):
        return v == INF or _is_nat(v)

    def parse(self, token):
        if isinstance(token, str) and token.strip().lower() in ("inf", "top", "∞"):
            return INF
        return _parse_int(token)

    def format(self, v):
        return "inf" if v == INF else v

    def sample(self, rng):
        return INF if rng.random() < 0.15 else rng.randint(0, 12)

    @property
    def idempotent(self):
        return False

    @property
    def strictly_monotonic(self):
        return True


@dataclass(frozen=True)
class BoundedSum(ValuationStructure):
    """``{0..k}`` with ``a + b = min(k, a + b)``; ``k`` is the only absorbing
    element besides 0."""

    k: int = 5
    kind = "bounded_sum"

    def __post_init__(self):
        if not _is_nat(self.k) or self.k < 1:
            raise InputError(f"bounded_sum needs k >= 1, got {self.k!r}")

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return self.k

    def combine(self, a, b):
        return min(self.k, a + b)

    def _diff(self, b, a):
        return self.k if b == self.k else b - a

    def key(self, v):
        return v

    def contains(self, v):
        return _is_nat(v) and v <= self.k

    def elements(self):
        return list(range(self.k + 1))

    def params(self):
        return {"k": self.k}

    def parse(self, token):
        if isinstance(token, str) and token.strip().lower() in ("inf", "top"):
            return self.k
        return _parse_int(token)

    def format(self, v):
        return v


@dataclass(frozen=True)
class OrderedMax(ValuationStructure):
    """A chain ``0 < 1 < ... < levels-1`` under ``max``.  ``levels=2`` is the
    classical CSP structure."""

    levels: int = 2
    kind = "ordered_max"

    def __post_init__(self):
        if not _is_nat(self.levels) or self.levels < 2:
            raise InputError(f"ordered_max needs levels >= 2, got {self.levels!r}")

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return self.levels - 1

    def combine(self, a, b):
        return a if a >= b else b

    def _diff(self, b, a):
        return b

    def key(self, v):
        return v

    def contains(self, v):
        return _is_nat(v) and v < self.levels

    def elements(self):
        return list(range(self.levels))

    def params(self):
        return {"levels": self.levels}

    def parse(self, token):
        if isinstance(token, str) and token.strip().lower() in ("inf", "top"):
            return self.top
        return _parse_int(token)

    def format(self, v):
        return v


def _parse_pair(token, top):
    if isinstance(token, (list, tuple)) and len(token) == 2:
        parts = [str(x) for x in token]
    elif isinstance(token, str):
        t = token.strip().lower()
        if t in ("top", "inf", "∞"):
            return top
        m = _PAIR_RE.match(t)
        if not m:
            if t.isdigit():
                return (int(t), 0)
            raise InputError(f"unparseable cost {token!r}")
        parts = [m.group(1), m.group(2)]
    elif _is_nat(token):
        return (token, 0)
    else:
        raise InputError(f"unparseable cost {token!r}")
    out = []
    for p in parts:
        p = p.strip().lower()
        if p in ("inf", "∞"):
            out.append(INF)
        elif p.isdigit():
            out.append(int(p))
        else:
            raise InputError(f"unparseable cost {token!r}")
    return tuple(out)


def _format_pair(v):
    a, b = v
    return f"({a},{'inf' if b == INF else b})"


@dataclass(frozen=True)
class DrivingPenalty(ValuationStructure):
    """Driving sentences ``(points, years)``.

    Points saturate at 12; any suspension discards points and years add up.
    Year totals above ``ymax`` collapse to the permanent ban ``(0, inf)`` so the
    carrier stays finite without creating a spurious absorbing element.
    """

    ymax: int = 10
    kind = "driving_penalty"
    POINTS = 12

    def __post_init__(self):
        if not _is_nat(self.ymax) or self.ymax < 1:
            raise InputError(f"driving_penalty needs ymax >= 1, got {self.ymax!r}")

    @property
    def bottom(self):
        return (0, 0)

    @property
    def top(self):
        return (0, INF)

    def combine(self, a, b):
        y = a[1] + b[1]
        if y == 0:
            return (min(a[0] + b[0], self.POINTS), 0)
        if y > self.ymax:
            return (0, INF)
        return (0, y)

    def _diff(self, b, a):
        pb, yb = b
        pa, ya = a
        if yb == 0:
            return (self.POINTS, 0) if pb == self.POINTS else (pb - pa, 0)
        if ya == 0:
            return b
        if ya == yb:
            # every points-only valuation is a difference; the largest wins
            return b if yb == INF else (self.POINTS, 0)
        return (0, yb - ya)

    def key(self, v):
        return (v[1], v[0])

    def contains(self, v):
        if not (isinstance(v, tuple) and len(v) == 2):
            return False
        p, y = v
        if y == 0:
            return _is_nat(p) and p <= self.POINTS
        return p == 0 and (y == INF or (_is_nat(y) and 1 <= y <= self.ymax))

    def elements(self):
        return (
            [(p, 0) for p in range(self.POINTS + 1)]
            + [(0, y) for y in range(1, self.ymax + 1)]
            + [(0, INF)]
        )

    def params(self):
        return {"ymax": self.ymax}

    def parse(self, token):
        return _parse_pair(token, self.top)

    def format(self, v):
        return _format_pair(v)


class Sentence(enum.Enum):
    LIFE = "inf"
    DEATH = "top"

    def __repr__(self):
        return self.name


LIFE = Sentence.LIFE
DEATH = Sentence.DEATH


@dataclass(frozen=True)
class CappedPrison(ValuationStructure):
    """Prison sentences: years ``0..cap`` (summing with saturation at ``cap``),
    life imprisonment, and death.  Two life sentences make death."""

    cap: int = 150
    kind = "capped_prison"

    def __post_init__(self):
        if not _is_nat(self.cap) or self.cap < 1:
            raise InputError(f"capped_prison needs cap >= 1, got {self.cap!r}")

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return DEATH

    def combine(self, a, b):
        if a is DEATH or b is DEATH:
            return DEATH
        if a is LIFE:
            return DEATH if b is LIFE else LIFE
        if b is LIFE:
            return LIFE
        return min(a + b, self.cap)

    def _diff(self, b, a):
        if b is DEATH:
            return DEATH
        if b is LIFE:
            return self.cap if a is LIFE else LIFE
        if b == self.cap:
            return self.cap
        return b - a

    def key(self, v):
        if v is DEATH:
            return (2, 0)
        if v is LIFE:
            return (1, 0)
        return (0, v)

    def contains(self, v):
        return v is LIFE or v is DEATH or (_is_nat(v) and v <= self.cap)

    def elements(self):
        return list(range(self.cap + 1)) + [LIFE, DEATH]

    def params(self):
        return {"cap": self.cap}

    def parse(self, token):
        if isinstance(token, str):
            t = token.strip().lower()
            if t in ("inf", "life", "∞"):
                return LIFE
            if t in ("top", "death"):
                return DEATH
        return _parse_int(token)

    def format(self, v):
        return v.value if isinstance(v, Sentence) else v


@dataclass(frozen=True)
class FinancialLife(ValuationStructure):
    """``(money, lives)`` ordered lives-first; money saturates at ``fmax``.

    Not fair: ``(0,1) - (fmax,0)`` has no difference.  Kept only as a
    negative example for the verifiers.  Life totals above ``hmax`` collapse
    to the top ``(0, inf)``.
    """

    fmax: int = 3
    hmax: int = 3
    kind = "financial_life"
    fair = False

    @property
    def bottom(self):
        return (0, 0)

    @property
    def top(self):
        return (0, INF)

    def combine(self, a, b):
        h = a[1] + b[1]
        if h > self.hmax:
            return (0, INF)
        return (min(a[0] + b[0], self.fmax), h)

    def _diff(self, b, a):
        cands = [g for g in self.elements() if self.combine(g, a) == b]
        if not cands:
            raise UnfairStructure(
                f"no difference {self.format(b)} - {self.format(a)} in {self.describe()}"
            )
        return self.max(cands)

    def key(self, v):
        return (v[1], v[0])

    def contains(self, v):
        if v == (0, INF):
            return True
        return (
            isinstance(v, tuple)
            and len(v) == 2
            and _is_nat(v[0])
            and _is_nat(v[1])
            and v[0] <= self.fmax
            and v[1] <= self.hmax
        )

    def elements(self):
        return [(f, h) for h in range(self.hmax + 1) for f in range(self.fmax + 1)] + [
            (0, INF)
        ]

    def params(self):
        return {"fmax": self.fmax, "hmax": self.hmax}

    def parse(self, token):
        return _parse_pair(token, self.top)

    def format(self, v):
        return _format_pair(v)


STRUCTURE_KINDS = {
    cls.kind: cls
    for cls in (Weighted, BoundedSum, OrderedMax, DrivingPenalty, CappedPrison, FinancialLife)
}


def make_structure(kind: str, **params) -> ValuationStructure:
    try:
        cls = STRUCTURE_KINDS[kind]
    except KeyError:
        raise InputError(
            f"unknown structure kind {kind!r}; expected one of {sorted(STRUCTURE_KINDS)}"
        ) from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {kind}: {exc}") from None


# ---------------------------------------------------------------------------
# axiom verification


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    witness: tuple | None = None
    checked: int = 0

    def fail(self, *witness):
        if self.passed:
            self.passed = False
            self.witness = witness


@dataclass
class AxiomReport:
    structure: ValuationStructure
    mode: str
    axioms: dict[str, AxiomResult] = field(default_factory=dict)
    idempotent: bool = False
    strictly_monotonic: bool = False

    @property
    def ok(self) -> bool:
        return all(a.passed for a in self.axioms.values())

    @property
    def failed(self) -> list[str]:
        return [name for name, a in self.axioms.items() if not a.passed]

    def as_dict(self) -> dict:
        fmt = self.structure.format
        return {
            "structure": self.structure.spec(),
            "mode": self.mode,
            "axioms": {
                name: {
                    "passed": a.passed,
                    "checked": a.checked,
                    "witness": None if a.witness is None else [fmt(w) for w in a.witness],
                }
                for name, a in self.axioms.items()
            },
            "idempotent": self.idempotent,
            "strictly_monotonic": self.strictly_monotonic,
        }


AXIOMS = (
    "commutativity",
    "associativity",
    "identity",
    "monotonicity",
    "absorbing_top",
    "fairness",
)


def verify_structure(
    s: ValuationStructure, *, samples: int | None = None, seed: int | None = None
) -> AxiomReport:
    """Check the valuation-structure axioms and fairness.

    With ``samples=None`` every element, pair and triple of the finite carrier
    is examined.  Otherwise ``samples`` random triples are drawn from
    ``s.sample`` using ``seed`` (required).  Failures are recorded with the
    first witness found; nothing is raised.
    """
    if samples is None:
        if s.elements() is None:
            raise CapabilityError(f"{s.describe()} is unbounded; use sampled mode")
        return _verify_exhaustive(s)
    if seed is None:
        raise InputError("sampled verification needs an explicit seed")
    return _verify_sampled(s, samples, seed)


def _check_difference(s, beta, alpha, cands, res: AxiomResult):
    res.checked += 1
    if not cands:
        res.fail(beta, alpha)
        return
    best = s.max(cands)
    try:
        got = s.diff(beta, alpha)
    except (UnfairStructure, OrderViolation):
        res.fail(beta, alpha)
        return
    if got != best or s.combine(got, alpha) != beta:
        res.fail(beta, alpha)


def _verify_exhaustive(s: ValuationStructure) -> AxiomReport:
    t = s.tables
    E, C, n = t.elements, t.comb, t.size
    rep = AxiomReport(s, "exhaustive", {name: AxiomResult(name) for name in AXIOMS})
    ax = rep.axioms
    bot = t.index[s.bottom]
    top = t.index[s.top]
    for i in range(n):
        ax["identity"].checked += 1
        if C[i][bot] != i:
            ax["identity"].fail(E[i])
        ax["absorbing_top"].checked += 1
        if C[i][top] != top:
            ax["absorbing_top"].fail(E[i])
        for j in range(n):
            ax["commutativity"].checked += 1
            if C[i][j] != C[j][i]:
                ax["commutativity"].fail(E[i], E[j])
            for k in range(n):
                ax["associativity"].checked += 1
                if C[C[i][j]][k] != C[i][C[j][k]]:
                    ax["associativity"].fail(E[i], E[j], E[k])
                if i >= j:
                    ax["monotonicity"].checked += 1
                    if C[i][k] < C[j][k]:
                        ax["monotonicity"].fail(E[i], E[j], E[k])
    # minuend ascending, subtrahend descending: largest offending alpha first
    for b in range(n):
        for a in range(b, -1, -1):
            cands = [E[g] for g in range(n) if C[g][a] == b]
            _check_difference(s, E[b], E[a], cands, ax["fairness"])
    rep.idempotent = s.idempotent
    rep.strictly_monotonic = s.strictly_monotonic
    return rep


def _verify_sampled(s: ValuationStructure, count: int, seed: int) -> AxiomReport:
    rng = random.Random(seed)
    rep = AxiomReport(s, f"sampled({count},{seed})", {n: AxiomResult(n) for n in AXIOMS})
    ax = rep.axioms
    comb, key = s.combine, s.key
    idem = True
    strict = True
    for _ in range(count):
        a, b, c = s.sample(rng), s.sample(rng), s.sample(rng)
        ax["commutativity"].checked += 1
        if comb(a, b) != comb(b, a):
            ax["commutativity"].fail(a, b)
        ax["associativity"].checked += 1
        if comb(comb(a, b), c) != comb(a, comb(b, c)):
            ax["associativity"].fail(a, b, c)
        ax["identity"].checked += 1
        if comb(a, s.bottom) != a:
            ax["identity"].fail(a)
        ax["absorbing_top"].checked += 1
        if comb(a, s.top) != s.top:
            ax["absorbing_top"].fail(a)
        hi, lo = (a, b) if key(a) >= key(b) else (b, a)
        ax["monotonicity"].checked += 1
        if key(comb(hi, c)) < key(comb(lo, c)):
            ax["monotonicity"].fail(hi, lo, c)
        if comb(a, a) != a:
            idem = False
        if key(hi) > key(lo) and c != s.top and key(comb(hi, c)) <= key(comb(lo, c)):
            strict = False
        # fairness: lo + c is a witnessed difference target; the computed
        # difference must reproduce it and dominate the known difference lo
        beta = comb(lo, c)
        res = ax["fairness"]
        res.checked += 1
        try:
            g = s.diff(beta, c)
        except (UnfairStructure, OrderViolation):
            res.fail(beta, c)
            continue
        if comb(g, c) != beta or key(g) < key(lo):
            res.fail(beta, c)
    rep.idempotent = idem
    rep.strictly_monotonic = strict
    return rep


def structure_theorems(s: ValuationStructure) -> dict[str, tuple | None]:
    """Exhaustively test the structural results on fair valuation structures.

    Returns a mapping from property name to the first counterexample, or
    ``None`` when the property holds for every tuple of the carrier.
    Properties: lemma1 (difference bounds and cancellation), lemma2/lemma3
    (absorbing elements dominate/vanish), slice_independence, max_absorbing
    (``a - a`` is the largest absorbing element below ``a``),
    double_difference (``((a+b)-a)-b == (a+b)-(a+b)``), dichotomy
    (``(a+b)-b`` is ``a`` or an absorbing element above ``a``) and dac_lemma.
    """
    t = s.tables
    E, C, n = t.elements, t.comb, t.size
    idx = t.index
    D = [[idx[s.diff(E[b], E[a])] if a <= b else None for a in range(n)] for b in range(n)]
    absorbing = [i for i in range(n) if C[i][i] == i]
    out: dict[str, tuple | None] = {}

    def first(name, gen):
        out[name] = next(gen, None)

    first(
        "lemma1",
        (
            (E[u], E[v], E[w])
            for v in range(n)
            for w in range(v + 1)
            for u in range(n)
            if D[v][w] > v or C[C[u][w]][D[v][w]] != C[u][v]
        ),
    )
    first(
        "lemma2",
        (
            (E[a], E[b])
            for a in absorbing
            for b in range(a + 1)
            if C[a][b] != a or D[a][b] != a
        ),
    )
    first(
        "lemma3",
        (
            (E[a], E[b])
            for a in absorbing
            for b in range(a, n)
            if C[a][b] != b or D[b][a] != b
        ),
    )
    first(
        "slice_independence",
        (
            (E[b], E[g], E[a0], E[a1])
            for g in range(n)
            for b in range(g + 1)
            for a0 in absorbing
            if a0 <= g
            for a1 in absorbing
            if a1 >= g
            if not (a0 <= C[g][b] <= a1 and a0 <= D[g][b] <= a1)
        ),
    )
    first(
        "max_absorbing",
        (
            (E[a],)
            for a in range(n)
            if D[a][a] not in absorbing or D[a][a] != max(x for x in absorbing if x <= a)
        ),
    )
    first(
        "double_difference",
        (
            (E[a], E[b])
            for a in range(n)
            for b in range(n)
            if D[D[C[a][b]][a]][b] != D[C[a][b]][C[a][b]]
        ),
    )

    def dichotomy():
        for a in range(n):
            for b in range(n):
                ab = C[a][b]
                r = D[ab][b]
                if r == a:
                    continue
                if r != D[ab][ab] or r not in absorbing or r <= a:
                    yield (E[a], E[b])

    first("dichotomy", dichotomy())

    def dac_lemma():
        for a in range(n):
            for b in range(n):
                ab = C[a][b]
                for g in range(n):
                    if C[ab][g] != a:
                        continue
                    for a2 in range(a, n):
                        a2b = C[a2][b]
                        for g2 in range(g + 1):
                            if C[a2b][g2] != a2:
                                yield (E[a], E[b], E[g], E[a2], E[g2])

    first("dac_lemma", dac_lemma())
    return out
