"""Exhaustive spot checks of realizers over finite ranges of numerals."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import InstanceCapExceeded, NotQuantifierFree, ShapeUnsupported, TypeMismatch
from .evaluator import EvalConfig, decide_qf
from .mr import mr_apply_terms
from .sequential import decompose_forall_exists
from .syntax import (
    NAT, ONE, App, Exists, ForAll, Formula, Term, infer_type,
    is_quantifier_free, numeral, strip_block, subst_many, walk,
)

INSTANCE_CAP = 10_000


@dataclass(frozen=True)
class Failure:
    inputs: dict
    instance: Formula
    decision: bool = False

    def to_json(self) -> dict:
        return {"inputs": dict(self.inputs), "instance": str(self.instance), "decision": self.decision}


@dataclass(frozen=True)
class WitnessReport:
    checked: int
    failures: tuple[Failure, ...]
    range: tuple[int, int]
    variables: tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        return "fail" if self.failures else "pass"

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "verdict": self.verdict,
            "range": list(self.range),
            "variables": list(self.variables),
            "failures": [f.to_json() for f in self.failures],
        }


def _values(rng: tuple[int, int]) -> range:
    lo, hi = rng
    if lo < 0 or lo > hi:
        raise ValueError(f"bad range {lo}..{hi}")
    return range(lo, hi + 1)


def check_witness(s: Formula, t: Term, rng: tuple[int, int], cfg: EvalConfig | None = None) -> WitnessReport:
    """Decide ``A(n, t n)`` for every ``n`` in the inclusive range ``rng``,
    where ``s`` is ``!x:0. ?y:0. A(x, y)``."""
    x, y, matrix = decompose_forall_exists(s)
    if x.type != NAT or y.type != NAT:
        raise ShapeUnsupported(f"only type-0 variables can be sampled, got x : {x.type}, y : {y.type}")
    if not is_quantifier_free(matrix):
        raise NotQuantifierFree(f"matrix is not quantifier-free: {matrix}")
    ty = infer_type(t)
    if ty != ONE:
        raise TypeMismatch(f"witness term must have type (0->0), got {ty}")
    failures = []
    values = _values(rng)
    for n in values:
        instance = subst_many(matrix, {x.name: numeral(n), y.name: App(t, numeral(n))})
        if not decide_qf(instance, cfg):
            failures.append(Failure({x.name: n}, instance))
    return WitnessReport(len(values), tuple(failures), tuple(rng), (x.name,))


def check_mr_witness(a: Formula, terms: Sequence[Term], rng: tuple[int, int], cfg: EvalConfig | None = None) -> WitnessReport:
    """Sample ``terms mr a`` over every assignment of the range to its
    leading universally quantified type-0 variables."""
    f = mr_apply_terms(a, terms)
    if any(isinstance(n, Exists) for n in walk(f)):
        raise ShapeUnsupported(f"realizability formula contains an existential: {f}")
    block, matrix = strip_block(f, ForAll)
    for v in block:
        if v.type != NAT:
            raise ShapeUnsupported(f"cannot sample quantifier over {v.name} : {v.type}")
    if not is_quantifier_free(matrix):
        raise NotQuantifierFree(f"matrix is not quantifier-free: {matrix}")
    values = _values(rng)
    total = len(values) ** len(block)
    if total > INSTANCE_CAP:
        raise InstanceCapExceeded(f"{total} instances exceeds the cap of {INSTANCE_CAP}")
    # the same name may be bound twice in a block; the innermost binding wins
    failures = []
    for combo in itertools.product(values, repeat=len(block)):
        mapping = {}
        for v, n in zip(block, combo):
            mapping[v.name] = numeral(n)
        instance = subst_many(matrix, mapping)
        if not decide_qf(instance, cfg):
            failures.append(Failure({v.name: n for v, n in zip(block, combo)}, instance))
    return WitnessReport(total, tuple(failures), tuple(rng), tuple(v.name for v in block))
