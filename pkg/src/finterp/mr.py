"""Modified realizability: realizer types, the translation ``A -> (x, x mr A)``,
instantiation with concrete realizers and the soundness implication for Gamma1.

Conventions:

* a function realizing ``A -> B`` takes the realizers of ``A`` as curried
  arguments, left to right in tuple order;
* realizer tuples are substituted simultaneously;
* an empty tuple of premise realizers produces no quantifier at all.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classify import gamma1_failure, subformula_at
from .errors import ArityMismatch, NotGamma1, TypeMismatch
from .syntax import (
    NAT, And, Eq, Exists, FiniteType, ForAll, Formula, Imp, NameSupply, Not, Or,
    Term, Var, ZERO, apply, curried, forall_block, infer_type, is_prime,
    subst_many,
)


def mr_types(a: Formula) -> list[FiniteType]:
    if is_prime(a):
        return []
    if isinstance(a, And):
        return mr_types(a.left) + mr_types(a.right)
    if isinstance(a, Or):
        return [NAT] + mr_types(a.left) + mr_types(a.right)
    if isinstance(a, Imp):
        premise = mr_types(a.left)
        return [curried(premise, t) for t in mr_types(a.right)]
    if isinstance(a, ForAll):
        return [curried([a.type], t) for t in mr_types(a.body)]
    if isinstance(a, Exists):
        return [a.type] + mr_types(a.body)
    raise TypeError(f"not a formula: {a!r}")


@dataclass(frozen=True)
class MrResult:
    realizers: tuple[Var, ...]
    formula: Formula
    source: Formula

    @property
    def types(self) -> list[FiniteType]:
        return [v.type for v in self.realizers]


def mr_translate(a: Formula, supply: NameSupply | None = None) -> MrResult:
    """Fresh realizer variables ``x`` and the formula ``x mr a``."""
    supply = supply or NameSupply()
    supply.reserve(a.all_names)
    xs, f = _mr(a, supply)
    return MrResult(tuple(xs), f, a)


def _mr(a: Formula, supply: NameSupply) -> tuple[list[Var], Formula]:
    if is_prime(a):
        return [], a
    if isinstance(a, And):
        xs, fa = _mr(a.left, supply)
        ys, fb = _mr(a.right, supply)
        return xs + ys, And(fa, fb)
    if isinstance(a, Or):
        z = supply.fresh(NAT)
        xs, fa = _mr(a.left, supply)
        ys, fb = _mr(a.right, supply)
        tag = Eq(z, ZERO)
        return [z] + xs + ys, And(Imp(tag, fa), Imp(Not(tag), fb))
    if isinstance(a, Imp):
        ys, fa = _mr(a.left, supply)
        us, fb = _mr(a.right, supply)
        xs = [supply.fresh(curried([y.type for y in ys], u.type)) for u in us]
        body = Imp(fa, subst_many(fb, {u.name: apply(x, *ys) for u, x in zip(us, xs)}))
        return xs, forall_block(ys, body)
    if isinstance(a, ForAll):
        us, fb = _mr(a.body, supply)
        y = Var(a.name, a.type)
        xs = [supply.fresh(curried([a.type], u.type)) for u in us]
        body = subst_many(fb, {u.name: apply(x, y) for u, x in zip(us, xs)})
        return xs, ForAll(a.name, a.type, body)
    if isinstance(a, Exists):
        z = supply.fresh(a.type)
        xs, fb = _mr(a.body, supply)
        return [z] + xs, subst_many(fb, {a.name: z})
    raise TypeError(f"not a formula: {a!r}")


def _check_terms(types: Sequence[FiniteType], terms: Sequence[Term]):
    if len(types) != len(terms):
        raise ArityMismatch(f"expected {len(types)} realizer term(s), got {len(terms)}")
    for i, (ty, t) in enumerate(zip(types, terms)):
        actual = infer_type(t)
        if actual != ty:
            raise TypeMismatch(f"realizer {i} has type {actual}, expected {ty}")


def mr_apply_terms(a: Formula, terms: Sequence[Term]) -> Formula:
    """``terms mr a``: the translation with the realizer variables replaced.

    Beta-redexes created by plugging in lambda terms are contracted.
    """
    result = mr_translate(a, NameSupply(_term_names(terms)))
    _check_terms(result.types, terms)
    return subst_many(result.formula, {x.name: t for x, t in zip(result.realizers, terms)}, reduce=True)


def _term_names(terms) -> set:
    names = set()
    for t in terms:
        names |= t.all_names
    return names


def gamma1_soundness_formula(a: Formula, terms: Sequence[Term], mode: str = "strict") -> Formula:
    """``(terms mr a) -> a`` for ``a`` in Gamma1."""
    path = gamma1_failure(a, liberal=(mode == "liberal"))
    if path is not None:
        raise NotGamma1(f"not in Gamma1 ({mode}) at {list(path)}: {subformula_at(a, path)}")
    return Imp(mr_apply_terms(a, terms), a)
