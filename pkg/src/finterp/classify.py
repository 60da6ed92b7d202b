"""Syntactic formula classes: quantifier-free, exists-free, purely universal,
Gamma1, Gamma2 and negative; plus the double-negation of primes.

Failure positions are paths of child indices from the root (binary connectives:
0 = left, 1 = right; quantifiers: 0 = body).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import NotExistsFree
from .syntax import (
    BOT, And, Bot, Exists, ForAll, Formula, Imp, Or, is_prime,
    is_quantifier_free, strip_block,
)

MODES = ("strict", "liberal")

Path = Optional[tuple]

FLAGS = ("quantifier_free", "exists_free", "purely_universal", "in_gamma1", "in_gamma2", "negative")


def _first(*results) -> Path:
    for r in results:
        if r is not None:
            return r
    return None


def _under(prefix: tuple, path: Path) -> Path:
    return None if path is None else prefix + path


def qf_failure(a: Formula, path=()) -> Path:
    if isinstance(a, (ForAll, Exists)):
        return path
    if isinstance(a, (And, Or, Imp)):
        return _first(qf_failure(a.left, path + (0,)), qf_failure(a.right, path + (1,)))
    return None


def exists_free_failure(a: Formula, liberal: bool = False, path=()) -> Path:
    """Built from primes by forall, & and ->; in liberal mode any
    quantifier-free subformula counts as prime."""
    if is_prime(a) or (liberal and is_quantifier_free(a)):
        return None
    if isinstance(a, ForAll):
        return exists_free_failure(a.body, liberal, path + (0,))
    if isinstance(a, (And, Imp)):
        return _first(
            exists_free_failure(a.left, liberal, path + (0,)),
            exists_free_failure(a.right, liberal, path + (1,)),
        )
    return path


def purely_universal_failure(a: Formula, path=()) -> Path:
    depth = 0
    while isinstance(a, ForAll):
        a = a.body
        depth += 1
    return _under(path + (0,) * depth, qf_failure(a))


def _gamma_failure(a: Formula, premise_ok, path=()) -> Path:
    if is_prime(a):
        return None
    if isinstance(a, (And, Or)):
        return _first(
            _gamma_failure(a.left, premise_ok, path + (0,)),
            _gamma_failure(a.right, premise_ok, path + (1,)),
        )
    if isinstance(a, (ForAll, Exists)):
        return _gamma_failure(a.body, premise_ok, path + (0,))
    if isinstance(a, Imp):
        # the premise may start with a (possibly empty) block of existentials
        _, matrix = strip_block(a.left, Exists)
        if not premise_ok(matrix):
            return path
        return _gamma_failure(a.right, premise_ok, path + (1,))
    return path


def gamma1_failure(a: Formula, liberal: bool = False) -> Path:
    return _gamma_failure(a, lambda p: exists_free_failure(p, liberal) is None)


def gamma2_failure(a: Formula) -> Path:
    return _gamma_failure(a, lambda p: purely_universal_failure(p) is None)


def _negated_prime(a: Formula) -> bool:
    return isinstance(a, Imp) and is_prime(a.left) and isinstance(a.right, Bot)


def negative_failure(a: Formula, path=()) -> Path:
    """Built from negated primes and bot by forall, & and ->."""
    if isinstance(a, Bot) or _negated_prime(a):
        return None
    if isinstance(a, ForAll):
        return negative_failure(a.body, path + (0,))
    if isinstance(a, (And, Imp)):
        return _first(negative_failure(a.left, path + (0,)), negative_failure(a.right, path + (1,)))
    return path


def subformula_at(a: Formula, path) -> Formula:
    for i in path:
        a = a.body if isinstance(a, (ForAll, Exists)) else (a.left, a.right)[i]
    return a


@dataclass(frozen=True)
class ClassificationReport:
    quantifier_free: bool
    exists_free: bool
    purely_universal: bool
    in_gamma1: bool
    in_gamma2: bool
    negative: bool
    mode: str
    witness_paths: dict = field(default_factory=dict)

    def to_json(self, formula: Formula | None = None) -> dict:
        out = {flag: getattr(self, flag) for flag in FLAGS}
        out["mode"] = self.mode
        paths = {}
        for flag, path in sorted(self.witness_paths.items()):
            entry = {"path": list(path)}
            if formula is not None:
                entry["subformula"] = str(subformula_at(formula, path))
            paths[flag] = entry
        out["witness_paths"] = paths
        return out


def classify(a: Formula, mode: str = "strict") -> ClassificationReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    liberal = mode == "liberal"
    failures = {
        "quantifier_free": qf_failure(a),
        "exists_free": exists_free_failure(a, liberal),
        "purely_universal": purely_universal_failure(a),
        "in_gamma1": gamma1_failure(a, liberal),
        "in_gamma2": gamma2_failure(a),
        "negative": negative_failure(a),
    }
    flags = {k: v is None for k, v in failures.items()}
    return ClassificationReport(
        mode=mode,
        witness_paths={k: v for k, v in failures.items() if v is not None},
        **flags,
    )


def double_negate_primes(a: Formula) -> Formula:
    """Replace every prime ``P`` of an exists-free formula by ``(P -> bot) -> bot``."""
    path = exists_free_failure(a)
    if path is not None:
        raise NotExistsFree(f"not exists-free at {list(path)}: {subformula_at(a, path)}")
    return _dn(a)


def _dn(a: Formula) -> Formula:
    if is_prime(a):
        return Imp(Imp(a, BOT), BOT)
    if isinstance(a, ForAll):
        return ForAll(a.name, a.type, _dn(a.body))
    return type(a)(_dn(a.left), _dn(a.right))
