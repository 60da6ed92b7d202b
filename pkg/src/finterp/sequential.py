"""Sequential forms of forall-exists sentences and the uniformization report.

``forall x exists y A(x, y)`` becomes ``forall X exists Y forall n A(X n, Y n)``
with ``X : 0 -> rho`` and ``Y : 0 -> tau`` standing for the sequences of
``x``'s and ``y``'s.
"""
from __future__ import annotations

from dataclasses import dataclass

from .classify import MODES, classify
from .errors import NotForallExists
from .syntax import (
    NAT, ONE, App, Arrow, Exists, ForAll, Formula, NameSupply, Rec,
    Var, binder_types, level, subst_many, walk,
)

# Uniformization results whose hypotheses the report checks.
#   realizability            full induction, realizer extraction, Gamma1
#   realizability-restricted as above without higher-type recursors
#   dialectica               full induction, functional interpretation, Gamma2
#   dialectica-restricted    as above without higher-type recursors
THEOREMS = ("realizability", "realizability-restricted", "dialectica", "dialectica-restricted")


def decompose_forall_exists(s: Formula) -> tuple[Var, Var, Formula]:
    """Split ``!x:T. ?y:U. A`` into ``(x, y, A)``."""
    if not isinstance(s, ForAll):
        raise NotForallExists(f"expected a leading universal quantifier: {s}", path=())
    if not isinstance(s.body, Exists):
        raise NotForallExists(f"expected an existential quantifier under !{s.name}: {s.body}", path=(0,))
    inner = s.body
    return Var(s.name, s.type), Var(inner.name, inner.type), inner.body


def sequentialize(s: Formula) -> Formula:
    x, y, matrix = decompose_forall_exists(s)
    supply = NameSupply(s.all_names)
    big_x = supply.named("X", Arrow(NAT, x.type))
    big_y = supply.named("Y", Arrow(NAT, y.type))
    n = supply.named("n", NAT)
    body = subst_many(matrix, {x.name: App(big_x, n), y.name: App(big_y, n)})
    return ForAll(big_x.name, big_x.type, Exists(big_y.name, big_y.type, ForAll(n.name, NAT, body)))


def uses_full_recursors(a: Formula) -> bool:
    """Whether any recursor above type 0 occurs."""
    return any(isinstance(n, Rec) and n.sigma != NAT for n in walk(a))


def second_order_fragment(a: Formula) -> bool:
    """Every bound or free variable has type 0 or 1."""
    types = list(binder_types(a)) + [t for _, t in a.free]
    return all(level(t) <= 1 for t in types)


@dataclass(frozen=True)
class TheoremReport:
    gamma1: bool
    gamma2: bool
    mode: str
    second_order_fragment: bool
    uses_full_recursors: bool
    applicable: tuple[str, ...]
    rca_replacement: bool

    def to_json(self) -> dict:
        return {
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
            "mode": self.mode,
            "second_order_fragment": self.second_order_fragment,
            "uses_full_recursors": self.uses_full_recursors,
            "applicable": list(self.applicable),
            "rca_replacement": self.rca_replacement,
        }


def applicable_theorems(s: Formula, mode: str = "strict") -> TheoremReport:
    """Which uniformization results have their syntactic hypotheses met by ``s``.

    Says nothing about whether ``s`` is provable.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    x, y, _ = decompose_forall_exists(s)
    report = classify(s, mode)
    full_rec = uses_full_recursors(s)
    second_order = second_order_fragment(s)
    holds = {
        "realizability": report.in_gamma1,
        "realizability-restricted": report.in_gamma1 and not full_rec,
        "dialectica": report.in_gamma2,
        "dialectica-restricted": report.in_gamma2 and not full_rec,
    }
    return TheoremReport(
        gamma1=report.in_gamma1,
        gamma2=report.in_gamma2,
        mode=mode,
        second_order_fragment=second_order,
        uses_full_recursors=full_rec,
        applicable=tuple(t for t in THEOREMS if holds[t]),
        rca_replacement=x.type == ONE and y.type == ONE and second_order,
    )
