"""Typed bracket abstraction: compile lambdas away into projection/substitution combinators."""
from __future__ import annotations

from .syntax import (
    NAT, ONE, Add, App, Arith, Lam, Mul, Proj, Subst, Succ, Term, Var, arrow, infer_type,
    peel_succ,
)


def identity(ty) -> Term:
    """``subst[d,(d->d),d] proj[d,(d->d)] proj[d,d]``, which reduces ``x`` to ``x``."""
    return App(App(Subst(ty, arrow(ty, ty), ty), Proj(ty, arrow(ty, ty))), Proj(ty, ty))


def _const(body: Term, body_type, var_type) -> Term:
    return App(Proj(body_type, var_type), body)


def _abstract(x: Var, t: Term) -> Term:
    """A lambda-free ``u`` with ``u a`` reducing to ``t[x := a]``; ``t`` is lambda-free."""
    ty = infer_type(t)
    if x.name not in t.free_names:
        return _const(t, ty, x.type)
    if isinstance(t, Var):
        return identity(x.type)
    if isinstance(t, Succ):
        return _s(x.type, _const(Arith("succ"), ONE, x.type), _abstract(x, t.arg), NAT, NAT)
    if isinstance(t, (Add, Mul)):
        op = Arith("add" if isinstance(t, Add) else "mul")
        return _abstract(x, App(App(op, t.left), t.right))
    if isinstance(t, App):
        fun_type = infer_type(t.fun)
        return _s(x.type, _abstract(x, t.fun), _abstract(x, t.arg), fun_type.dom, fun_type.cod)
    raise TypeError(f"unexpected node in bracket abstraction: {t!r}")


def _s(delta, f: Term, g: Term, rho, tau) -> Term:
    # S f g  with f : delta -> rho -> tau, g : delta -> rho
    return App(App(Subst(delta, rho, tau), f), g)


def to_combinators(t: Term) -> Term:
    """Eliminate every lambda from ``t``; the result has the same type and the same values."""
    infer_type(t)
    return _compile(t)


def _compile(t: Term) -> Term:
    if isinstance(t, Lam):
        return _abstract(Var(t.name, t.type), _compile(t.body))
    if isinstance(t, Succ):
        n, inner = peel_succ(t)
        out = _compile(inner)
        for _ in range(n):
            out = Succ(out)
        return out
    if isinstance(t, (Add, Mul)):
        return type(t)(_compile(t.left), _compile(t.right))
    if isinstance(t, App):
        return App(_compile(t.fun), _compile(t.arg))
    return t
