"""Goedel's Dialectica interpretation ``A -> exists x forall y A_D``.

The implication clause is taken as printed: ``exists U exists Y forall x
forall v (A_D(x, Y x v) -> B_D(U x, v))``, with the ``U`` functions listed
before the ``Y`` functions.  Disjunctions are tagged ``z = 0`` / ``z = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    NAT, And, Eq, Exists, FiniteType, ForAll, Formula, Imp, NameSupply, Or, Var,
    ZERO, apply, curried, exists_block, forall_block, is_prime, numeral,
    subst_many,
)


def d_types(a: Formula) -> tuple[list[FiniteType], list[FiniteType]]:
    if is_prime(a):
        return [], []
    if isinstance(a, And):
        (x, y), (u, v) = d_types(a.left), d_types(a.right)
        return x + u, y + v
    if isinstance(a, Or):
        (x, y), (u, v) = d_types(a.left), d_types(a.right)
        return [NAT] + x + u, y + v
    if isinstance(a, ForAll):
        x, y = d_types(a.body)
        return [curried([a.type], t) for t in x], [a.type] + y
    if isinstance(a, Exists):
        x, y = d_types(a.body)
        return [a.type] + x, y
    if isinstance(a, Imp):
        (x, y), (u, v) = d_types(a.left), d_types(a.right)
        us = [curried(x, t) for t in u]
        ys = [curried(x + v, t) for t in y]
        return us + ys, x + v
    raise TypeError(f"not a formula: {a!r}")


@dataclass(frozen=True)
class DResult:
    exists_vars: tuple[Var, ...]
    forall_vars: tuple[Var, ...]
    matrix: Formula
    source: Formula

    def as_formula(self) -> Formula:
        return exists_block(self.exists_vars, forall_block(self.forall_vars, self.matrix))

    @property
    def types(self) -> tuple[list[FiniteType], list[FiniteType]]:
        return [v.type for v in self.exists_vars], [v.type for v in self.forall_vars]


def d_translate(a: Formula, supply: NameSupply | None = None) -> DResult:
    """Tuples and quantifier-free matrix of the interpretation of ``a``.

    Quantified variables of ``a`` keep their names when they become tuple
    variables (primed if a name is already taken); new function variables
    get fresh names avoiding every name in ``a``.
    """
    supply = supply or NameSupply()
    supply.reserve(a.free_names)
    xs, ys, m = _d(a, supply, a.all_names)
    return DResult(tuple(xs), tuple(ys), m, a)


def _d(a: Formula, supply: NameSupply, names):
    if is_prime(a):
        return [], [], a
    if isinstance(a, And):
        x, y, ad = _d(a.left, supply, names)
        u, v, bd = _d(a.right, supply, names)
        return x + u, y + v, And(ad, bd)
    if isinstance(a, Or):
        z = _fresh(supply, NAT, names)
        x, y, ad = _d(a.left, supply, names)
        u, v, bd = _d(a.right, supply, names)
        matrix = Or(And(Eq(z, ZERO), ad), And(Eq(z, numeral(1)), bd))
        return [z] + x + u, y + v, matrix
    if isinstance(a, ForAll):
        z = supply.named(a.name, a.type)
        x, y, ad = _d(a.body, supply, names)
        ad = subst_many(ad, {a.name: z})
        big = [_fresh(supply, curried([a.type], xi.type), names) for xi in x]
        ad = subst_many(ad, {xi.name: apply(X, z) for xi, X in zip(x, big)})
        return big, [z] + y, ad
    if isinstance(a, Exists):
        z = supply.named(a.name, a.type)
        x, y, ad = _d(a.body, supply, names)
        return [z] + x, y, subst_many(ad, {a.name: z})
    if isinstance(a, Imp):
        x, y, ad = _d(a.left, supply, names)
        u, v, bd = _d(a.right, supply, names)
        xt = [t.type for t in x]
        vt = [t.type for t in v]
        big_u = [_fresh(supply, curried(xt, ui.type), names) for ui in u]
        big_y = [_fresh(supply, curried(xt + vt, yi.type), names) for yi in y]
        premise = subst_many(ad, {yi.name: apply(Y, *x, *v) for yi, Y in zip(y, big_y)})
        conclusion = subst_many(bd, {ui.name: apply(U, *x) for ui, U in zip(u, big_u)})
        return big_u + big_y, x + v, Imp(premise, conclusion)
    raise TypeError(f"not a formula: {a!r}")


def _fresh(supply: NameSupply, ty, names) -> Var:
    while True:
        v = supply.fresh(ty)
        if v.name not in names:
            return v
