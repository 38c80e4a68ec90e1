"""Instance files: YAML (or JSON) documents describing a VCSP.

Schema::

    structure: {kind: weighted}          # plus parameters, e.g. {kind: bounded_sum, k: 5}
    variables:
      - {name: "1", domain: [a, b]}
    constraints:
      - scope: ["1", "2"]                # one entry per scope; unary scopes allowed
        default: 0                       # cost of tuples not listed (bottom if omitted)
        costs:
          - [[a, a], inf]                # (tuple of labels, cost)

Costs are integers, ``inf``/``top``, or structure literals such as ``(12,0)``.
A report document (anything with a top-level ``problem`` key) is accepted in
place of an instance, so commands can be chained.
"""

from __future__ import annotations

import hashlib
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from .errors import InputError, ParseError
from .model import Vcsp
from .valuation import make_structure

FIXTURE_PACKAGE = "softarc.fixtures"


def fixture_names() -> list[str]:
    root = resources.files(FIXTURE_PACKAGE)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def resolve_path(arg: str | Path) -> Path:
    """A filesystem path, or the name of a bundled fixture such as ``fig1a``."""
    path = Path(arg)
    if path.exists():
        return path
    name = str(arg)
    if name in fixture_names():
        return Path(str(resources.files(FIXTURE_PACKAGE) / f"{name}.yaml"))
    raise InputError(f"no such instance file or bundled fixture: {arg}")


def read_text(arg: str | Path) -> str:
    return resolve_path(arg).read_text(encoding="utf-8")


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_instance(arg: str | Path) -> Vcsp:
    return loads(read_text(arg))


def loads(text: str) -> Vcsp:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}") from None
    return from_document(doc)


def _field(doc, key, where, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{where}: missing field '{key}'")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"{where}.{key}: expected {kind.__name__}")
    return val


def from_document(doc: Any) -> Vcsp:
    if isinstance(doc, dict) and "problem" in doc and "variables" not in doc:
        doc = doc["problem"]
    if not isinstance(doc, dict):
        raise ParseError("document root must be a mapping")
    sdoc = _field(doc, "structure", "root", dict)
    params = {k: v for k, v in sdoc.items() if k != "kind"}
    try:
        structure = make_structure(_field(sdoc, "kind", "structure"), **params)
    except InputError as exc:
        raise ParseError(f"structure: {exc}") from None

    names, domains = [], []
    for k, var in enumerate(_field(doc, "variables", "root", list)):
        where = f"variables[{k}]"
        names.append(str(_field(var, "name", where)))
        dom = _field(var, "domain", where, list)
        domains.append([str(x) for x in dom])
    try:
        v = Vcsp(structure, names, domains)
    except InputError as exc:
        raise ParseError(f"variables: {exc}") from None

    seen: dict[frozenset, int] = {}
    for k, con in enumerate(doc.get("constraints") or []):
        where = f"constraints[{k}]"
        scope = [str(x) for x in _field(con, "scope", where, list)]
        key = frozenset(scope)
        if key in seen:
            raise ParseError(
                f"{where}: duplicate scope {scope} (already declared at constraints[{seen[key]}])"
            )
        seen[key] = k
        costs = {}
        for m, entry in enumerate(con.get("costs") or []):
            ewhere = f"{where}.costs[{m}]"
            if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                raise ParseError(f"{ewhere}: expected [tuple, cost]")
            tup, cost = entry
            if not isinstance(tup, (list, tuple)):
                tup = [tup]
            if len(tup) != len(scope):
                raise ParseError(f"{ewhere}: tuple arity {len(tup)} does not match scope {scope}")
            try:
                costs[tuple(str(x) for x in tup)] = structure.parse(cost)
            except InputError as exc:
                raise ParseError(f"{ewhere}: {exc}") from None
        try:
            default = structure.parse(con["default"]) if "default" in con else None
            v.add_constraint(scope, costs, default)
        except InputError as exc:
            raise ParseError(f"{where}: {exc}") from None
    return v


def _fmt(s, value):
    return s.format(value)


def to_document(v: Vcsp) -> dict:
    """Serialise ``v`` (effective costs) in the instance schema."""
    s = v.structure
    bot = s.bottom
    constraints = []
    for i, row in enumerate(v.unary):
        entries = [[[v.domains[i][a]], _fmt(s, c)] for a, c in enumerate(row) if c != bot]
        if entries:
            constraints.append({"scope": [v.names[i]], "default": _fmt(s, bot), "costs": entries})
    for p in v.scopes():
        c = v.constraints[p]
        entries = []
        for t, cost in zip(c.tuples(), c.dense()):
            if cost != bot:
                labels = [v.domains[i][a] for i, a in zip(p, t)]
                entries.append([labels, _fmt(s, cost)])
        constraints.append(
            {"scope": [v.names[i] for i in p], "default": _fmt(s, bot), "costs": entries}
        )
    return {
        "structure": s.spec(),
        "variables": [{"name": n, "domain": list(d)} for n, d in zip(v.names, v.domains)],
        "constraints": constraints,
    }


def dumps(v: Vcsp) -> str:
    return yaml.safe_dump(to_document(v), sort_keys=False, default_flow_style=None)
