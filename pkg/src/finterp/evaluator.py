"""Normal-order evaluation of terms and decision of closed quantifier-free formulas."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FinterpError, NotClosed, NotQuantifierFree, StepBudgetExceeded, TypeMismatch
from .syntax import (
    NAT, Add, And, App, Arith, Bot, Eq, Formula, Imp, Lam, Mul, Or, Proj, Rec,
    Subst, Succ, Term, Zero, apply, as_numeral, check_formula, infer_type,
    is_quantifier_free, numeral, peel_succ, spine, subst_many, wrap_succ,
)


@dataclass(frozen=True)
class EvalConfig:
    max_steps: int = 1_000_000
    trace: bool = False

    def __post_init__(self):
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


_ARITY = {"succ": 1, "add": 2, "mul": 2}


class _Machine:
    def __init__(self, cfg: EvalConfig):
        self.cfg = cfg
        self.steps = 0
        self.trace: list[Term] = []

    def tick(self, k, new: Term):
        self.steps += 1
        if self.steps > self.cfg.max_steps:
            raise StepBudgetExceeded(f"step budget of {self.cfg.max_steps} exhausted", partial=k(new))
        if self.cfg.trace:
            self.trace.append(k(new))

    def whnf(self, t: Term, k) -> Term:
        """Contract head redexes until none is left.  ``k`` rebuilds the whole
        term around the focus, for tracing and budget reports."""
        while True:
            head, args = spine(t)
            if isinstance(head, Lam) and args:
                new = apply(subst_many(head.body, {head.name: args[0]}), *args[1:])
            elif isinstance(head, Proj) and len(args) >= 2:
                new = apply(args[0], *args[2:])
            elif isinstance(head, Subst) and len(args) >= 3:
                x, y, z = args[:3]
                new = apply(App(App(x, z), App(y, z)), *args[3:])
            elif isinstance(head, Rec) and len(args) >= 3:
                rest = args[1:]
                n = self.whnf(args[0], lambda s: k(apply(head, s, *rest)))
                if isinstance(n, Zero):
                    new = apply(args[1], *args[3:])
                elif isinstance(n, Succ):
                    m = n.arg
                    new = apply(args[2], m, apply(head, m, args[1], args[2]), *args[3:])
                else:
                    return apply(head, n, *rest)
            elif isinstance(head, Arith) and len(args) >= _ARITY[head.op]:
                if head.op == "succ":
                    new = apply(Succ(args[0]), *args[1:])
                else:
                    node = Add if head.op == "add" else Mul
                    new = apply(node(args[0], args[1]), *args[2:])
            elif isinstance(t, (Add, Mul)):
                node = type(t)
                right = t.right
                a = self.nf(t.left, lambda s: k(node(s, right)))
                b = self.nf(right, lambda s: k(node(a, s)))
                na, nb = as_numeral(a), as_numeral(b)
                if na is None or nb is None:
                    return node(a, b)
                new = numeral(na + nb if node is Add else na * nb)
            else:
                return t
            self.tick(k, new)
            t = new

    def nf(self, t: Term, k) -> Term:
        t = self.whnf(t, k)
        if isinstance(t, Lam):
            name, ty = t.name, t.type
            return Lam(name, ty, self.nf(t.body, lambda b: k(Lam(name, ty, b))))
        if isinstance(t, Succ):
            n, inner = peel_succ(t)
            return wrap_succ(n, self.nf(inner, lambda s: k(wrap_succ(n, s))))
        if isinstance(t, App):
            head, args = spine(t)
            done = list(args)
            for i, arg in enumerate(args):
                done[i] = self.nf(arg, lambda s, i=i: k(apply(head, *done[:i], s, *args[i + 1:])))
            return apply(head, *done)
        return t


def _run(t: Term, cfg: EvalConfig | None, ctx=None) -> tuple[Term, _Machine]:
    cfg = cfg or EvalConfig()
    infer_type(t, ctx)
    m = _Machine(cfg)
    if cfg.trace:
        m.trace.append(t)
    return m.nf(t, lambda s: s), m


def normalize(t: Term, cfg: EvalConfig | None = None, ctx=None) -> Term:
    """Normal form of ``t`` (open terms allowed; free variables block reduction)."""
    return _run(t, cfg, ctx)[0]


def reduction_trace(t: Term, cfg: EvalConfig | None = None) -> list[Term]:
    """Every intermediate whole term, starting with ``t`` and ending in its normal form."""
    cfg = EvalConfig(cfg.max_steps if cfg else EvalConfig().max_steps, trace=True)
    nf, m = _run(t, cfg)
    if not m.trace or m.trace[-1] != nf:
        m.trace.append(nf)
    return m.trace


def _closed_nat(t: Term):
    if t.free:
        names = ", ".join(sorted(n for n, _ in t.free))
        raise NotClosed(f"term has free variables: {names}")
    ty = infer_type(t)
    if ty != NAT:
        raise TypeMismatch(f"expected a term of type 0, got {ty}")


def _read(t: Term, m: _Machine) -> int:
    nf = m.nf(t, lambda s: s)
    n = as_numeral(nf)
    if n is None:
        raise FinterpError(f"closed term of type 0 did not normalise to a numeral: {nf}")
    return n


def eval_nat(t: Term, cfg: EvalConfig | None = None) -> int:
    _closed_nat(t)
    return _read(t, _Machine(cfg or EvalConfig()))


def decide_qf(a: Formula, cfg: EvalConfig | None = None) -> bool:
    """Classical truth value of a closed quantifier-free formula."""
    if not is_quantifier_free(a):
        raise NotQuantifierFree(f"formula is not quantifier-free: {a}")
    if a.free:
        names = ", ".join(sorted(n for n, _ in a.free))
        raise NotClosed(f"formula has free variables: {names}")
    check_formula(a)
    m = _Machine(cfg or EvalConfig())
    return _decide(a, m)


def _decide(a: Formula, m: _Machine) -> bool:
    if isinstance(a, Bot):
        return False
    if isinstance(a, Eq):
        return _read(a.lhs, m) == _read(a.rhs, m)
    if isinstance(a, And):
        return _decide(a.left, m) and _decide(a.right, m)
    if isinstance(a, Or):
        return _decide(a.left, m) or _decide(a.right, m)
    if isinstance(a, Imp):
        return (not _decide(a.left, m)) or _decide(a.right, m)
    raise NotQuantifierFree(f"unexpected node {a!r}")
