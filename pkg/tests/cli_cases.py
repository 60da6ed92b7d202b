"""CLI invocations over the bundled corpus whose JSON output is kept as goldens."""
from __future__ import annotations

import io
import os
from pathlib import Path

import finterp
from finterp.cli import run

CORPUS = Path(finterp.__file__).parent / "corpus"
GOLDEN = Path(__file__).parent / "golden" / "cli"
REGEN = os.environ.get("FINTERP_REGEN") == "1"

FORMULA_COMMANDS = ("check", "classify", "mr", "mr-types", "dialectica", "d-types", "seq", "report", "decide")


def _cases():
    cases = {}
    for corpus in ("translations", "uniformization", "schematic"):
        for cmd in FORMULA_COMMANDS:
            cases[f"{corpus}.{cmd}"] = [cmd, f"{corpus}.fi"]
        cases[f"{corpus}.classify-liberal"] = ["classify", "--liberal-qf", f"{corpus}.fi"]
        cases[f"{corpus}.report-liberal"] = ["report", "--liberal-qf", f"{corpus}.fi"]
    cases["terms.check"] = ["check", "terms.fi"]
    cases["terms.eval"] = ["eval", "terms.fi"]
    cases["terms.eval-trace"] = ["eval", "--trace", "--item", "rec_double", "terms.fi"]
    cases["terms.eval-budget"] = ["eval", "--max-steps", "5", "--item", "power", "terms.fi"]
    cases["uniformization.witness-pass"] = ["witness", "--range", "0..20", "--item", "double", "--realizer", "twice", "uniformization.fi"]
    cases["uniformization.witness-fail"] = ["witness", "--range", "0..20", "--item", "double", "--realizer", "zero", "uniformization.fi"]
    cases["uniformization.witness-mr"] = ["witness", "--mr", "--item", "successor", "--realizer", "succ_fn", "uniformization.fi"]
    return cases


CASES = _cases()


def invoke(args, json_out=True) -> tuple[int, str, str]:
    """Run the CLI in-process from the corpus directory, so file names in
    diagnostics are relative and outputs do not depend on the checkout path."""
    argv = [args[0]] + (["--json"] if json_out else []) + list(args[1:])
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(CORPUS)
    try:
        code = run(argv, out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def golden_path(name: str) -> Path:
    return GOLDEN / f"{name}.jsonl"


EXIT_CODES = GOLDEN / "exit_codes.json"
