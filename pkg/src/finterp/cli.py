"""Command-line front end.

    finterp SUBCOMMAND FILE... [--item NAME] [--json] [--liberal-qf]
            [--max-steps N] [--range A..B] [--trace]

Exit status: 0 success, 1 domain error or failed check, 2 syntax/type/usage
error, 3 step budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import FLAGS, classify, subformula_at
from .dialectica import d_translate, d_types
from .errors import FinterpError, ParseError, StepBudgetExceeded
from .evaluator import EvalConfig, decide_qf, normalize, reduction_trace
from .frontend import Document, parse_file, pretty
from .mr import mr_translate, mr_types
from .sequential import applicable_theorems, sequentialize
from .syntax import NAT, as_numeral, check_formula, infer_type
from .witness import check_mr_witness, check_witness

SUBCOMMANDS = ("check", "classify", "mr", "mr-types", "dialectica", "d-types", "seq", "report", "eval", "decide", "witness")

_TERM_COMMANDS = {"eval"}
_ANY_COMMANDS = {"check"}


class UsageError(FinterpError):
    exit_code = 2


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like A..B, got {text!r}")
    if lo < 0 or lo > hi:
        raise argparse.ArgumentTypeError(f"range needs 0 <= A <= B, got {text!r}")
    return lo, hi


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("files", nargs="+", type=Path, metavar="FILE")
    common.add_argument("--item", help="process only the named item")
    common.add_argument("--json", action="store_true", help="one JSON object per item on stdout")
    common.add_argument("--liberal-qf", action="store_true", help="treat quantifier-free subformulas as prime")
    common.add_argument("--max-steps", type=_positive, default=EvalConfig().max_steps)
    common.add_argument("--range", type=_range, default=(0, 10), metavar="A..B")
    common.add_argument("--trace", action="store_true", help="print every reduction step (eval)")

    parser = argparse.ArgumentParser(prog="finterp", description="Proof-interpretation workbench for finite-type arithmetic.")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    helps = {
        "check": "parse and type-check",
        "classify": "syntactic formula classes",
        "mr": "modified realizability translation",
        "mr-types": "realizer types",
        "dialectica": "Dialectica translation",
        "d-types": "Dialectica tuple types",
        "seq": "sequential form of a forall-exists sentence",
        "report": "which uniformization results apply",
        "eval": "normalise terms",
        "decide": "decide closed quantifier-free formulas",
        "witness": "check a realizer over a range of numerals",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "witness":
            p.add_argument("--realizer", action="append", default=[], metavar="TERM_ITEM",
                           help="term item used as realizer (repeat with --mr)")
            p.add_argument("--mr", action="store_true", help="check the realizability formula instead")
    return parser


def _vars(vs) -> list:
    return [{"name": v.name, "type": pretty(v.type)} for v in vs]


def _tuple(vs) -> str:
    return "[" + ", ".join(f"{v.name} : {pretty(v.type)}" for v in vs) + "]"


def _types(ts) -> str:
    return "[" + ", ".join(pretty(t) for t in ts) + "]"


class Runner:
    def __init__(self, args):
        self.args = args
        self.mode = "liberal" if args.liberal_qf else "strict"
        self.cfg = EvalConfig(args.max_steps, args.trace)

    # each handler returns (json result, human lines, exit code)

    def check(self, item, doc):
        if item.kind == "term":
            ty = infer_type(item.node, doc.vars)
            return {"kind": "term", "text": pretty(item.node), "type": pretty(ty)}, [f"{pretty(item.node)} : {pretty(ty)}"], 0
        check_formula(item.node, doc.vars)
        return {"kind": "formula", "text": pretty(item.node)}, [pretty(item.node)], 0

    def classify(self, item, doc):
        rep = classify(item.node, self.mode)
        lines = [pretty(item.node), f"mode: {self.mode}"]
        for flag in FLAGS:
            value = getattr(rep, flag)
            line = f"{flag}: {'yes' if value else 'no'}"
            if flag in rep.witness_paths:
                path = rep.witness_paths[flag]
                line += f"  (at {list(path)}: {subformula_at(item.node, path)})"
            lines.append(line)
        return rep.to_json(item.node), lines, 0

    def mr(self, item, doc):
        r = mr_translate(item.node)
        return (
            {"realizers": _vars(r.realizers), "formula": pretty(r.formula)},
            [f"realizers: {_tuple(r.realizers)}", f"formula: {pretty(r.formula)}"],
            0,
        )

    def mr_types(self, item, doc):
        ts = mr_types(item.node)
        return {"types": [pretty(t) for t in ts]}, [_types(ts)], 0

    def dialectica(self, item, doc):
        r = d_translate(item.node)
        return (
            {"exists": _vars(r.exists_vars), "forall": _vars(r.forall_vars), "matrix": pretty(r.matrix)},
            [f"exists: {_tuple(r.exists_vars)}", f"forall: {_tuple(r.forall_vars)}", f"matrix: {pretty(r.matrix)}"],
            0,
        )

    def d_types(self, item, doc):
        ex, fa = d_types(item.node)
        return (
            {"exists": [pretty(t) for t in ex], "forall": [pretty(t) for t in fa]},
            [f"exists: {_types(ex)}", f"forall: {_types(fa)}"],
            0,
        )

    def seq(self, item, doc):
        f = sequentialize(item.node)
        return {"formula": pretty(f)}, [pretty(f)], 0

    def report(self, item, doc):
        rep = applicable_theorems(item.node, self.mode)
        j = rep.to_json()
        lines = [f"{k}: {v}" for k, v in j.items() if k != "applicable"]
        lines.insert(0, "applicable: " + (", ".join(rep.applicable) or "none"))
        return j, lines, 0

    def eval(self, item, doc):
        t = item.node
        if self.args.trace:
            steps = reduction_trace(t, self.cfg)
            nf = steps[-1]
        else:
            steps = None
            nf = normalize(t, self.cfg)
        ty = infer_type(t)
        value = as_numeral(nf) if ty == NAT else None
        result = {"normal_form": pretty(nf), "type": pretty(ty), "value": value}
        lines = []
        if steps is not None:
            result["trace"] = [pretty(s) for s in steps]
            lines.append(pretty(steps[0]))
            lines.extend(f"--> {pretty(s)}" for s in steps[1:])
        else:
            lines.append(pretty(nf) if value is None else str(value))
        return result, lines, 0

    def decide(self, item, doc):
        v = decide_qf(item.node, self.cfg)
        return {"value": v}, ["true" if v else "false"], 0

    def witness(self, item, doc):
        names = self.args.realizer
        if self.args.mr:
            terms = [self._term_item(doc, n) for n in names]
            rep = check_mr_witness(item.node, terms, self.args.range, self.cfg)
        else:
            if not names:
                candidates = [it.name for it in doc.items if it.kind == "term"]
                if len(candidates) != 1:
                    raise UsageError("witness needs --realizer TERM_ITEM (the file does not have exactly one term item)")
                names = candidates
            if len(names) != 1:
                raise UsageError("witness takes exactly one --realizer unless --mr is given")
            rep = check_witness(item.node, self._term_item(doc, names[0]), self.args.range, self.cfg)
        lo, hi = rep.range
        lines = [f"{rep.verdict} ({rep.checked} instance(s) over {lo}..{hi})"]
        for f in rep.failures:
            inputs = ", ".join(f"{k}={v}" for k, v in f.inputs.items())
            lines.append(f"fail {inputs}: {pretty(f.instance)}")
        return rep.to_json(), lines, 1 if rep.failures else 0

    @staticmethod
    def _term_item(doc: Document, name: str):
        try:
            it = doc.get(name)
        except KeyError:
            raise UsageError(f"no item named {name} in {doc.origin}") from None
        if it.kind != "term":
            raise UsageError(f"item {name} is not a term")
        return it.node


def _wants(subcommand: str, kind: str) -> bool:
    if subcommand in _ANY_COMMANDS:
        return True
    if subcommand in _TERM_COMMANDS:
        return kind == "term"
    return kind == "formula"


def _diagnostic(exc: Exception) -> dict:
    d = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.line is not None:
        d["line"], d["column"] = exc.line, exc.column
    if isinstance(exc, StepBudgetExceeded) and exc.partial is not None:
        text = pretty(exc.partial)
        d["partial"] = text if len(text) <= 500 else text[:500] + "..."
    return d


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    runner = Runner(args)
    handler = getattr(runner, args.subcommand.replace("-", "_"))
    status = 0

    def emit(item, result, lines, diagnostics):
        if args.json:
            record = {
                "item": item,
                "subcommand": args.subcommand,
                "mode": runner.mode,
                "result": result,
                "diagnostics": diagnostics,
            }
            stdout.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            if lines:
                if len(lines) == 1:
                    stdout.write(f"{item}: {lines[0]}\n")
                else:
                    stdout.write(f"{item}:\n")
                    for line in lines:
                        stdout.write(f"  {line}\n")
        for d in diagnostics:
            stderr.write(f"{item or '-'}: {d['error']}: {d['message']}\n")

    for path in args.files:
        try:
            doc = parse_file(path.read_text(encoding="utf-8"), str(path))
        except OSError as exc:
            emit(None, None, [], [{"error": "IOError", "message": str(exc)}])
            status = max(status, 2)
            continue
        except FinterpError as exc:
            emit(None, None, [], [_diagnostic(exc)])
            status = max(status, exc.exit_code)
            continue
        items = doc.items
        if args.item is not None:
            items = [it for it in items if it.name == args.item]
            if not items:
                emit(args.item, None, [], [{"error": "UsageError", "message": f"no item named {args.item} in {path}"}])
                status = max(status, 2)
                continue
            if not _wants(args.subcommand, items[0].kind):
                emit(args.item, None, [], [{"error": "UsageError", "message": f"{args.subcommand} does not apply to {items[0].kind} items"}])
                status = max(status, 2)
                continue
        for item in items:
            if not _wants(args.subcommand, item.kind):
                continue
            try:
                result, lines, code = handler(item, doc)
                emit(item.name, result, lines, [])
            except FinterpError as exc:
                emit(item.name, None, [], [_diagnostic(exc)])
                code = exc.exit_code
            except RecursionError:
                emit(item.name, None, [], [{"error": "RecursionError", "message": "term too deep"}])
                code = 3
            status = max(status, code)
    return status


def main(argv=None):
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    sys.exit(run(argv))
