"""Command-line interface: ``lscat COMMAND [FILES] [flags]``.

Exit codes: 0 success, 2 an interval or inconclusive answer, 1 an error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import documents as docs
from .category import check_inequalities, cat, gcat, gscat, scat
from .collapse import core_complex, core_poset, is_contractible_poset, is_strongly_collapsible, same_strong_homotopy_type
from .complex import SimplicialComplex, barycentric_subdivision
from .errors import LSCatError, SchemaError, UnknownCommand
from .functors import face_poset, order_complex
from .poset import opposite, posets_isomorphic
from .search import SearchBudget
from .verify import verify_report

COMMANDS = (
    "core",
    "is-contractible",
    "is-strongly-collapsible",
    "scat",
    "gscat",
    "cat",
    "gcat",
    "kfun",
    "chifun",
    "sd",
    "op",
    "quotient-t0",
    "same-type",
    "check-inequalities",
    "verify",
)

EXIT_OK, EXIT_ERROR, EXIT_INTERVAL = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lscat", description="LS-category invariants of complexes and finite spaces.")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("inputs", nargs="*", help="JSON documents ('-' or nothing reads stdin)")
    p.add_argument("--budget", type=int, default=1_000_000, help="max visited states per search")
    p.add_argument("--mode", choices=("facet-union", "exhaustive"), default="facet-union", help="gscat candidate pool")
    p.add_argument("--witness", action="store_true", help="print witnesses and certificates in text output")
    p.add_argument("--json", action="store_true", help="emit a single JSON object")
    p.add_argument("--seed", type=int, default=None, help="randomize collapse order (the core is unchanged up to isomorphism)")
    return p


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _expect(doc: docs.InputDocument, kind: str, command: str) -> None:
    if doc.kind != kind:
        raise SchemaError(f"{command} needs a {kind} document, got {doc.kind}", "type")


class _Report:
    def __init__(self):
        self.data: dict = {}
        self.lines: list[str] = []
        self.code = EXIT_OK


def _result(rep: _Report, res, witness: bool) -> None:
    rep.data.update(docs.result_document(res))
    exact = "exact" if res.exact else "interval"
    value = res.lower if res.exact else f"[{res.lower}, {res.upper}]"
    rep.lines.append(f"{res.invariant} = {value} ({exact}, mode {res.mode})")
    if not res.exact:
        rep.code = EXIT_INTERVAL
    if witness:
        for k, (w, c) in enumerate(zip(rep.data["witness"], rep.data["certificates"])):
            rep.lines.append(f"  element {k}: {json.dumps(w)}")
            rep.lines.append(f"    certificate: {json.dumps(c)}")


def run_command(command: str, inputs: Sequence[docs.InputDocument], args) -> _Report:
    rep = _Report()
    budget = SearchBudget(max_visited_states=args.budget)
    if command not in COMMANDS:
        raise UnknownCommand(f"unknown command {command!r}")
    need = 2 if command == "same-type" else 1
    if command != "check-inequalities" and len(inputs) != need:
        raise SchemaError(f"{command} takes {need} document(s), got {len(inputs)}")
    if command == "check-inequalities" and not 1 <= len(inputs) <= 2:
        raise SchemaError("check-inequalities takes one or two documents")
    doc = inputs[0]
    rep.data["command"] = command

    if command == "core":
        rng = random.Random(args.seed) if args.seed is not None else None
        if doc.kind == "complex":
            core, trace = core_complex(doc.obj, rng)
        else:
            core, trace = core_poset(doc.obj, rng)
        rep.data["object"] = docs.object_document(doc.obj)
        rep.data["core"] = docs.object_document(core)
        rep.data["trace"] = docs.certificate_document(trace)
        size = core.n_vertices if isinstance(core, SimplicialComplex) else len(core)
        rep.lines.append(f"core has {size} {'vertices' if doc.kind == 'complex' else 'points'}, {len(trace)} removals")
        rep.lines.append(docs.dumps(rep.data["core"]).rstrip())
    elif command == "is-contractible":
        _expect(doc, "poset", command)
        v = is_contractible_poset(doc.obj)
        rep.data["value"] = v
        rep.lines.append(str(v).lower())
    elif command == "is-strongly-collapsible":
        _expect(doc, "complex", command)
        v = is_strongly_collapsible(doc.obj)
        rep.data["value"] = v
        rep.lines.append(str(v).lower())
    elif command in ("scat", "gscat"):
        _expect(doc, "complex", command)
        res = scat(doc.obj, budget) if command == "scat" else gscat(doc.obj, args.mode, budget)
        _result(rep, res, args.witness)
    elif command in ("cat", "gcat"):
        _expect(doc, "poset", command)
        res = cat(doc.obj, budget) if command == "cat" else gcat(doc.obj, bounds_on_limit=True)
        _result(rep, res, args.witness)
    elif command in ("kfun", "op", "quotient-t0"):
        _expect(doc, "poset", command)
        if command == "kfun":
            out = docs.complex_document(order_complex(doc.obj))
        else:
            out = docs.poset_document(opposite(doc.obj) if command == "op" else doc.obj)
        if command == "quotient-t0":
            classes = [[docs.plain(p), docs.plain(doc.classes[p])] for p in doc.payload["points"]]
            rep.data = {"command": command, "quotient": out, "classes": classes}
        else:
            rep.data = out
        rep.lines.append(docs.dumps(rep.data).rstrip())
    elif command in ("chifun", "sd"):
        _expect(doc, "complex", command)
        out = face_poset(doc.obj) if command == "chifun" else barycentric_subdivision(doc.obj)
        rep.data = docs.object_document(out)
        rep.lines.append(docs.dumps(rep.data).rstrip())
    elif command == "same-type":
        a, b = inputs
        if a.kind != b.kind:
            raise SchemaError("same-type compares two documents of the same type", "type")
        if a.kind == "complex":
            v = same_strong_homotopy_type(a.obj, b.obj)
        else:
            v = posets_isomorphic(core_poset(a.obj)[0], core_poset(b.obj)[0])
        rep.data["value"] = v
        rep.lines.append(str(v).lower())
    elif command == "check-inequalities":
        K = next((d.obj for d in inputs if d.kind == "complex"), None)
        X = next((d.obj for d in inputs if d.kind == "poset"), None)
        report = check_inequalities(K, X, budget)
        rep.data.update(docs.report_document(report))
        for key, val in report.values.items():
            shown = val if not hasattr(val, "exact") else (val.lower if val.exact else f"[{val.lower}, {val.upper}]")
            rep.lines.append(f"{key} = {shown}")
        for c in report.checks:
            rep.lines.append(f"{c.status:>12}  {c.name}   {list(c.lhs)} {c.relation} {list(c.rhs)}")
        if report.violations:
            rep.code = EXIT_ERROR
        elif report.inconclusive:
            rep.code = EXIT_INTERVAL
    return rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    paths = args.inputs or ["-"]
    try:
        if args.command == "verify":
            n = 0
            for path in paths:
                n += verify_report(json.loads(_read(path)))
            out = {"command": "verify", "verified": n}
            print(docs.dumps(out), end="") if args.json else print(f"verified {n} result(s)")
            return EXIT_OK
        if args.command not in COMMANDS:
            raise UnknownCommand(f"unknown command {args.command!r}")
        inputs = [docs.parse_input(_read(p), preorder=args.command == "quotient-t0") for p in paths]
        rep = run_command(args.command, inputs, args)
    except (LSCatError, OSError, json.JSONDecodeError) as exc:
        if args.json:
            print(docs.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)}), end="")
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(docs.dumps(rep.data), end="")
    else:
        print("\n".join(rep.lines))
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
