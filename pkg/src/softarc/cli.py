"""``softarc`` command line: every subcommand prints one JSON report.

Exit status: 0 on success, 1 when the property a command checks is false,
2 on usage or input errors.  Reports are deterministic for identical inputs
and flags (keys sorted, no timestamps).
"""

from __future__ import annotations

import argparse
import json
import sys

import yaml

from . import dac, gac, oracle
from .errors import SoftArcError
from .instance import digest, from_document, read_text, resolve_path, to_document
from .model import Check, OpCounts, Vcsp, f_min
from .transforms import ext, proj
from .valuation import STRUCTURE_KINDS, make_structure, structure_theorems, verify_structure


class UsageError(SoftArcError):
    pass


def _split(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _load(arg: str) -> tuple[Vcsp, dict]:
    text = read_text(arg)
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise UsageError(f"{arg}: invalid YAML: {exc}") from None
    return from_document(doc), {"source": str(arg), "sha256": digest(text)}


def _fmt(v: Vcsp, value):
    return v.structure.format(value)


def _witness(v: Vcsp, check: Check):
    return None if check.witness is None else check.witness.describe(v)


class Report:
    def __init__(self, command: str):
        self.data: dict = {"command": command, "inputs": [], "results": {}}
        self.status = 0
        self.figure_source: Vcsp | None = None

    def input(self, meta: dict) -> None:
        self.data["inputs"].append(meta)

    def problem(self, v: Vcsp) -> None:
        self.data["problem"] = to_document(v)
        self.figure_source = v

    def result(self, **kw) -> None:
        self.data["results"].update(kw)

    def counts(self, c: OpCounts) -> None:
        self.data["counts"] = c.as_dict()

    def dumps(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- subcommands --------------------------------------------------------------

def cmd_check(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.problem(v)
    s = v.structure
    rep.result(n=v.n, d=v.d, e=v.e, r=v.r, binary=v.is_binary(), fair=s.fair,
               strictly_monotonic=s.strictly_monotonic,
               f_min=_fmt(v, f_min(v)))


def cmd_gac(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    c = OpCounts()
    w = gac.enforce_gac(v, c, guard=not args.no_guard)
    rep.problem(w)
    rep.counts(c)
    rep.result(f_min=_fmt(w, f_min(w)), gac=bool(gac.is_gac(w)),
               iteration_bound=gac.gac_iteration_bound(w))


def cmd_sac_strict(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    c = OpCounts()
    w = gac.enforce_sac_strict(v, c)
    rep.problem(w)
    rep.counts(c)
    rep.result(f_min=_fmt(w, f_min(w)), gac=bool(gac.is_gac(w)), storage=w.storage())


def cmd_check_gac(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.problem(v)
    chk = gac.is_gac(v)
    rep.result(gac=chk.ok, witness=_witness(v, chk))
    if v.structure.strictly_monotonic:
        strict = gac.is_gac_strict(v)
        rep.result(gac_strict=strict.ok, strict_witness=_witness(v, strict))
    rep.status = 0 if chk else 1


def cmd_dac(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    order = _split(args.order)
    c = OpCounts()
    w = dac.enforce_dac(v, order, c)
    rep.problem(w)
    rep.counts(c)
    rep.result(order=order, f_min=_fmt(w, f_min(w)), dac=bool(dac.is_dac(w, order)),
               call_bound=2 * w.e * w.d, storage=w.storage())


def cmd_check_dac(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.problem(v)
    order = _split(args.order)
    chk = dac.is_dac(v, order)
    rep.result(order=order, dac=chk.ok, witness=_witness(v, chk))
    rep.status = 0 if chk else 1


def cmd_solve_tree(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.problem(v)
    c = OpCounts()
    tree = dac.tree_structure(v, args.root)
    value, assign = dac.solve_tree(v, tree, c)
    rep.counts(c)
    rep.result(root=v.names[tree.root], order=[v.names[i] for i in tree.order],
               valuation=_fmt(v, value), assignment=v.label(assign))


def cmd_irreducible(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.problem(v)
    r = dac.check_irreducibility(v, args.depth, seed=args.seed)
    rep.result(
        depth=args.depth,
        f_min=_fmt(v, r.base),
        irreducible=r.irreducible,
        exhaustive=r.exhaustive,
        states=r.states,
        improvements=[
            {"scope": list(m.scope), "ops": [list(op) for op in m.ops], "f_min": _fmt(v, m.f_min)}
            for m in r.improvements
        ],
    )
    rep.status = 0 if r.irreducible else 1


def cmd_fmin(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.result(f_min=_fmt(v, f_min(v)))


def cmd_proj(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    w = proj(v, _split(args.scope), args.var, args.value)
    rep.problem(w)
    rep.result(f_min=_fmt(w, f_min(w)))


def cmd_ext(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    w = ext(v, args.var, args.value, _split(args.scope))
    rep.problem(w)
    rep.result(f_min=_fmt(w, f_min(w)))


def cmd_optimum(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.problem(v)
    r = oracle.brute_optimum(v, args.cap)
    rep.result(valuation=_fmt(v, r.valuation), assignment=v.label(r.assignment),
               enumerated=r.count)


def cmd_equiv(args, rep: Report):
    v1, m1 = _load(args.first)
    v2, m2 = _load(args.second)
    rep.input(m1)
    rep.input(m2)
    same = oracle.brute_equivalent(v1, v2, args.cap)
    rep.result(equivalent=same)
    rep.status = 0 if same else 1


def cmd_closures(args, rep: Report):
    v, meta = _load(args.instance)
    rep.input(meta)
    rep.problem(v)
    r = gac.enumerate_closures(v, args.budget)
    s = v.structure

    def op_text(op):
        if op[0] == "ext":
            _, i, a, p = op
        else:
            _, p, i, a = op
        return [op[0], v.names[i], v.domains[i][a], [v.names[j] for j in p]]

    rep.result(
        budget=args.budget,
        complete=r.complete,
        states=r.states,
        closures=[
            {"f_min": _fmt(v, c.f_min), "path": [op_text(op) for op in c.path],
             "problem": to_document(c.problem)}
            for c in r.closures
        ],
        max_f_min=None if not r.closures else _fmt(v, r.max_f_min(s)),
        min_f_min=None if not r.closures else _fmt(v, r.min_f_min(s)),
    )


def _structure_from_args(args):
    if args.target in STRUCTURE_KINDS:
        params = {}
        for item in args.param or []:
            key, _, val = item.partition("=")
            if not val:
                raise UsageError(f"--param expects key=value, got {item!r}")
            params[key] = int(val) if val.lstrip("-").isdigit() else val
        return make_structure(args.target, **params), None
    resolve_path(args.target)
    v, meta = _load(args.target)
    return v.structure, meta


def cmd_verify_structure(args, rep: Report):
    s, meta = _structure_from_args(args)
    if meta:
        rep.input(meta)
    if args.samples is not None and args.seed is None:
        raise UsageError("--samples needs an explicit --seed")
    axioms = verify_structure(s, samples=args.samples, seed=args.seed)
    rep.result(**axioms.as_dict(), ok=axioms.ok, failed=axioms.failed)
    if args.samples is None and s.fair:
        fmt = s.format
        rep.result(theorems={
            name: None if w is None else [fmt(x) for x in w]
            for name, w in structure_theorems(s).items()
        })
    if s.elements() is not None:
        count, found = oracle.absorbing_count(s)
        rep.result(absorbing=[s.format(x) for x in found], absorbing_count=count)
    rep.status = 0 if axioms.ok else 1


# -- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="softarc", description="Soft arc consistency toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, instance=True):
        p = sub.add_parser(name, help=help_text)
        if instance:
            p.add_argument("instance", help="instance file or bundled fixture name")
        p.add_argument("--figure", metavar="PATH",
                       help="also draw the resulting problem's microstructure to PATH")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "parse and summarise an instance")
    p = add("gac", cmd_gac, "enforce generalised arc consistency")
    p.add_argument("--no-guard", action="store_true", help="process stale queue entries too")
    add("sac-strict", cmd_sac_strict, "strictly monotonic arc consistency (crisp AC + projections)")
    add("check-gac", cmd_check_gac, "test generalised arc consistency")
    for name, func, text in (("dac", cmd_dac, "enforce directional arc consistency"),
                             ("check-dac", cmd_check_dac, "test directional arc consistency")):
        p = add(name, func, text)
        p.add_argument("--order", required=True, help="comma-separated variable names")
    p = add("solve-tree", cmd_solve_tree, "solve a tree-structured problem exactly")
    p.add_argument("--root", required=True)
    p = add("irreducible", cmd_irreducible, "search pairwise proj/ext sequences raising f_min")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--seed", type=int)
    add("fmin", cmd_fmin, "lower bound f_min")
    for name, func in (("proj", cmd_proj), ("ext", cmd_ext)):
        p = add(name, func, f"apply one {name} operation")
        p.add_argument("--scope", required=True, help="comma-separated variable names")
        p.add_argument("--var", required=True)
        p.add_argument("--value", required=True)
    p = add("optimum", cmd_optimum, "brute-force optimum")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p = add("equiv", cmd_equiv, "brute-force equivalence of two instances", instance=False)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p = add("closures", cmd_closures, "enumerate arc consistency closures")
    p.add_argument("--budget", type=int, default=8)
    p = add("verify-structure", cmd_verify_structure,
            "check valuation structure axioms", instance=False)
    p.add_argument("target", help="structure kind (e.g. bounded_sum) or instance file")
    p.add_argument("--param", action="append", help="structure parameter key=value")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    return ap


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Execute a command line; returns (exit status, report, diagnostics)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), "", ""
    rep = Report(args.command)
    try:
        args.func(args, rep)
        if args.figure and rep.figure_source is None:
            raise UsageError(f"{args.command} produces no problem to draw")
    except SoftArcError as exc:
        return 2, "", f"softarc {args.command}: {type(exc).__name__}: {exc}\n"
    if args.figure:
        from .plotting import save_microstructure
        save_microstructure(rep.figure_source, args.figure, title=args.command)
        rep.data["figure"] = args.figure
    return rep.status, rep.dumps(), ""


def main(argv: list[str] | None = None) -> int:
    status, text, err = run(argv)
    sys.stdout.write(text)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
