"""Finite types, terms and formulas, with typing, substitution and alpha-equivalence.

Binders are named.  Every ``Var`` carries its type, so open terms can be typed
without a context; passing a context additionally checks that free variables
are declared with the types they are used at.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import TypeMismatch, UnboundVariable


# ---------------------------------------------------------------- types


class FiniteType:
    def __str__(self):
        from .frontend import pretty

        return pretty(self)


@dataclass(frozen=True, repr=False)
class Nat(FiniteType):
    def __repr__(self):
        return "NAT"


@dataclass(frozen=True, repr=False)
class Arrow(FiniteType):
    dom: FiniteType
    cod: FiniteType

    def __repr__(self):
        return f"Arrow({self.dom!r}, {self.cod!r})"


NAT = Nat()
ONE = Arrow(NAT, NAT)


def arrow(*types: FiniteType) -> FiniteType:
    """``arrow(a, b, c)`` is ``a -> (b -> c)``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def curried(args: Sequence[FiniteType], result: FiniteType) -> FiniteType:
    return arrow(*args, result)


def uncurry(t: FiniteType) -> tuple[list[FiniteType], FiniteType]:
    args = []
    while isinstance(t, Arrow):
        args.append(t.dom)
        t = t.cod
    return args, t


def level(t: FiniteType) -> int:
    if isinstance(t, Nat):
        return 0
    return max(level(t.dom) + 1, level(t.cod))


# ---------------------------------------------------------------- nodes


class Node:
    """Common base of terms and formulas; caches variable sets."""

    @cached_property
    def free(self) -> frozenset:
        return frozenset(_free(self))

    @cached_property
    def free_names(self) -> frozenset:
        return frozenset(name for name, _ in self.free)

    @cached_property
    def all_names(self) -> frozenset:
        return frozenset(_names(self))

    def __str__(self):
        from .frontend import pretty

        return pretty(self)


class Term(Node):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str
    type: FiniteType


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Proj(Term):
    rho: FiniteType
    tau: FiniteType


@dataclass(frozen=True)
class Subst(Term):
    delta: FiniteType
    rho: FiniteType
    tau: FiniteType


@dataclass(frozen=True)
class Rec(Term):
    sigma: FiniteType


ARITH_OPS = ("succ", "add", "mul")


@dataclass(frozen=True)
class Arith(Term):
    """Successor, addition or multiplication as an unapplied function constant.

    Only needed so that bracket abstraction can produce lambda-free terms.
    """

    op: str

    def __post_init__(self):
        if self.op not in ARITH_OPS:
            raise ValueError(f"unknown arithmetic constant {self.op!r}")


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Lam(Term):
    name: str
    type: FiniteType
    body: Term


class Formula(Node):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    name: str
    type: FiniteType
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    name: str
    type: FiniteType
    body: Formula


ZERO = Zero()
BOT = Bot()
BINDERS = (Lam, ForAll, Exists)
QUANTIFIERS = (ForAll, Exists)
CONNECTIVES = (And, Or, Imp)

AnyNode = Union[Term, Formula]


def Not(a: Formula) -> Formula:
    return Imp(a, BOT)


def is_prime(a: Formula) -> bool:
    return isinstance(a, (Bot, Eq))


def numeral(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def as_numeral(t: Term) -> int | None:
    n = 0
    while isinstance(t, Succ):
        t = t.arg
        n += 1
    return n if isinstance(t, Zero) else None


def peel_succ(t: Term) -> tuple[int, Term]:
    n = 0
    while isinstance(t, Succ):
        t = t.arg
        n += 1
    return n, t


def wrap_succ(n: int, t: Term) -> Term:
    for _ in range(n):
        t = Succ(t)
    return t


def apply(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def spine(t: Term) -> tuple[Term, list[Term]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def forall_block(vars: Iterable[Var], body: Formula) -> Formula:
    for v in reversed(list(vars)):
        body = ForAll(v.name, v.type, body)
    return body


def exists_block(vars: Iterable[Var], body: Formula) -> Formula:
    for v in reversed(list(vars)):
        body = Exists(v.name, v.type, body)
    return body


def strip_block(a: Formula, kind: type) -> tuple[list[Var], Formula]:
    """Split a maximal leading block of ``kind`` quantifiers off ``a``."""
    vars = []
    while isinstance(a, kind):
        vars.append(Var(a.name, a.type))
        a = a.body
    return vars, a


def children(node: AnyNode) -> tuple:
    if isinstance(node, (Succ,)):
        return (node.arg,)
    if isinstance(node, (Add, Mul, And, Or, Imp)):
        return (node.left, node.right)
    if isinstance(node, App):
        return (node.fun, node.arg)
    if isinstance(node, Eq):
        return (node.lhs, node.rhs)
    if isinstance(node, BINDERS):
        return (node.body,)
    return ()


def walk(node: AnyNode) -> Iterator[AnyNode]:
    """Pre-order traversal (iterative, so long numerals are fine)."""
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def subterms(a: Formula) -> Iterator[Term]:
    for n in walk(a):
        if isinstance(n, Term):
            yield n


def is_quantifier_free(a: Formula) -> bool:
    return not any(isinstance(n, QUANTIFIERS) for n in walk(a))


def binder_types(node: AnyNode) -> Iterator[FiniteType]:
    for n in walk(node):
        if isinstance(n, BINDERS):
            yield n.type


# ---------------------------------------------------------------- variables


def _free(node: AnyNode) -> set:
    if isinstance(node, Var):
        return {(node.name, node.type)}
    if isinstance(node, Succ):
        return set(peel_succ(node)[1].free)
    if isinstance(node, BINDERS):
        return {(n, t) for n, t in node.body.free if n != node.name}
    out: set = set()
    for c in children(node):
        out |= c.free
    return out


def _names(node: AnyNode) -> set:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Succ):
        return set(peel_succ(node)[1].all_names)
    out: set = {node.name} if isinstance(node, BINDERS) else set()
    for c in children(node):
        out |= c.all_names
    return out


def free_vars(node: AnyNode) -> frozenset:
    """Free variables as a set of ``(name, type)`` pairs."""
    return node.free


def variant(name: str, avoid) -> str:
    while name in avoid:
        name += "'"
    return name


class NameSupply:
    """Deterministic fresh-name source.

    Type-0 variables are named ``z<k>``, higher types ``Z<k>``, with one
    counter per prefix.  One supply per translation run.
    """

    def __init__(self, avoid: Iterable[str] = ()):
        self.used = set(avoid)
        self.counters: dict[str, int] = {}

    def reserve(self, names: Iterable[str]):
        self.used.update(names)

    def fresh(self, ty: FiniteType, prefix: str | None = None) -> Var:
        if prefix is None:
            prefix = "z" if ty == NAT else "Z"
        k = self.counters.get(prefix, 0)
        while f"{prefix}{k}" in self.used:
            k += 1
        name = f"{prefix}{k}"
        self.counters[prefix] = k + 1
        self.used.add(name)
        return Var(name, ty)

    def named(self, name: str, ty: FiniteType) -> Var:
        """``name`` itself if still unused, else a primed variant of it."""
        name = variant(name, self.used)
        self.used.add(name)
        return Var(name, ty)


def fresh_tuple(types: Sequence[FiniteType], avoid: Iterable[str] = (), supply: NameSupply | None = None) -> tuple[Var, ...]:
    if supply is None:
        supply = NameSupply(avoid)
    else:
        supply.reserve(avoid)
    return tuple(supply.fresh(t) for t in types)


# ---------------------------------------------------------------- typing


ARITH_TYPES = {"succ": ONE, "add": arrow(NAT, NAT, NAT), "mul": arrow(NAT, NAT, NAT)}


def constant_type(t: Term) -> FiniteType:
    if isinstance(t, Proj):
        return arrow(t.rho, t.tau, t.rho)
    if isinstance(t, Subst):
        d, r, s = t.delta, t.rho, t.tau
        return arrow(arrow(d, r, s), arrow(d, r), d, s)
    if isinstance(t, Rec):
        s = t.sigma
        return arrow(NAT, s, arrow(NAT, s, s), s)
    if isinstance(t, Arith):
        return ARITH_TYPES[t.op]
    if isinstance(t, Zero):
        return NAT
    raise TypeError(f"not a constant: {t!r}")


def _context(ctx) -> dict | None:
    if ctx is None:
        return None
    if isinstance(ctx, Mapping):
        return dict(ctx)
    out = {}
    for item in ctx:
        if isinstance(item, Var):
            out[item.name] = item.type
        else:
            name, ty = item
            out[name] = ty
    return out


def _infer(t: Term, bound: dict, ctx: dict | None) -> FiniteType:
    if isinstance(t, Var):
        if t.name in bound:
            expected = bound[t.name]
        elif ctx is None:
            return t.type
        elif t.name in ctx:
            expected = ctx[t.name]
        else:
            raise UnboundVariable(f"unbound variable {t.name}")
        if expected != t.type:
            raise TypeMismatch(f"variable {t.name} used at type {t.type} but declared {expected}")
        return expected
    if isinstance(t, Succ):
        _, inner = peel_succ(t)
        _expect_nat(inner, bound, ctx, t)
        return NAT
    if isinstance(t, (Add, Mul)):
        _expect_nat(t.left, bound, ctx, t)
        _expect_nat(t.right, bound, ctx, t)
        return NAT
    if isinstance(t, App):
        f = _infer(t.fun, bound, ctx)
        a = _infer(t.arg, bound, ctx)
        if not isinstance(f, Arrow):
            raise TypeMismatch(f"in {t}: {t.fun} has type {f}, which is not a function type")
        if f.dom != a:
            raise TypeMismatch(f"in {t}: argument {t.arg} expected type {f.dom}, got {a}")
        return f.cod
    if isinstance(t, Lam):
        return Arrow(t.type, _infer(t.body, {**bound, t.name: t.type}, ctx))
    return constant_type(t)


def _expect_nat(t, bound, ctx, where):
    ty = _infer(t, bound, ctx)
    if ty != NAT:
        raise TypeMismatch(f"in {where}: {t} expected type 0, got {ty}")


def infer_type(t: Term, ctx=None) -> FiniteType:
    """Type of ``t``.

    ``ctx`` (a mapping or a list of ``(name, type)`` pairs) must then cover
    every free variable; with ``ctx=None`` the annotations on free variables
    are trusted.
    """
    return _infer(t, {}, _context(ctx))


def check_formula(a: Formula, ctx=None) -> None:
    """Raise ``TypeMismatch``/``UnboundVariable`` unless ``a`` is well typed."""
    _check(a, {}, _context(ctx))


def _check(a: Formula, bound: dict, ctx):
    if isinstance(a, Eq):
        _expect_nat(a.lhs, bound, ctx, a)
        _expect_nat(a.rhs, bound, ctx, a)
    elif isinstance(a, CONNECTIVES):
        _check(a.left, bound, ctx)
        _check(a.right, bound, ctx)
    elif isinstance(a, QUANTIFIERS):
        _check(a.body, {**bound, a.name: a.type}, ctx)


# ---------------------------------------------------------------- substitution


def subst_many(host: AnyNode, mapping: Mapping[str, Term], reduce: bool = False) -> AnyNode:
    """Simultaneous capture-avoiding substitution.

    With ``reduce=True`` beta-redexes created by the substitution (a
    substituted lambda landing in function position) are contracted,
    hereditarily; redexes already present in ``host`` are left alone.
    """
    mapping = {k: v for k, v in mapping.items() if k in host.free_names}
    if not mapping:
        return host
    return _sub(host, mapping, reduce)


def _sub(node, m, reduce):
    if not any(k in node.free_names for k in m):
        return node
    if isinstance(node, Var):
        return m.get(node.name, node)
    if isinstance(node, Succ):
        n, inner = peel_succ(node)
        return wrap_succ(n, _sub(inner, m, reduce))
    if isinstance(node, App):
        f = _sub(node.fun, m, reduce)
        a = _sub(node.arg, m, reduce)
        if reduce and isinstance(f, Lam) and not isinstance(node.fun, Lam):
            return _sub(f.body, {f.name: a}, True)
        return App(f, a)
    if isinstance(node, BINDERS):
        inner = {k: v for k, v in m.items() if k != node.name and k in node.body.free_names}
        if not inner:
            return node
        incoming = set()
        for v in inner.values():
            incoming |= v.free_names
        name = node.name
        if name in incoming:
            name = variant(name, incoming | node.body.free_names | set(inner))
            inner[node.name] = Var(name, node.type)
        return type(node)(name, node.type, _sub(node.body, inner, reduce))
    if isinstance(node, (Add, Mul, And, Or, Imp)):
        return type(node)(_sub(node.left, m, reduce), _sub(node.right, m, reduce))
    if isinstance(node, Eq):
        return Eq(_sub(node.lhs, m, reduce), _sub(node.rhs, m, reduce))
    return node


def substitute(host: AnyNode, var: Union[str, Var], replacement: Term) -> AnyNode:
    """``host[var := replacement]``, renaming binders to avoid capture."""
    rtype = infer_type(replacement)
    if isinstance(var, Var):
        name, declared = var.name, [var.type]
    else:
        name = var
        declared = [t for n, t in host.free if n == name]
    for t in declared:
        if t != rtype:
            raise TypeMismatch(f"cannot substitute {replacement} : {rtype} for {name} : {t}")
    return subst_many(host, {name: replacement})


# ---------------------------------------------------------------- alpha-equivalence


def alpha_eq(a, b) -> bool:
    """True iff ``a`` and ``b`` differ only in the names of bound variables."""
    if isinstance(a, FiniteType) or isinstance(b, FiniteType):
        return a == b
    return _aeq(a, b, {}, {}, 0)


def _aeq(a, b, ea, eb, depth):
    if isinstance(a, Succ) and isinstance(b, Succ):
        na, a = peel_succ(a)
        nb, b = peel_succ(b)
        if na != nb:
            return False
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        if a.type != b.type:
            return False
        ia, ib = ea.get(a.name), eb.get(b.name)
        if ia is None and ib is None:
            return a.name == b.name
        return ia == ib
    if isinstance(a, BINDERS):
        return a.type == b.type and _aeq(a.body, b.body, {**ea, a.name: depth}, {**eb, b.name: depth}, depth + 1)
    ca, cb = children(a), children(b)
    if not ca:
        return a == b
    return all(_aeq(x, y, ea, eb, depth) for x, y in zip(ca, cb))


# ---------------------------------------------------------------- formula utilities


def erase_dummy_foralls(a: Formula) -> Formula:
    """Drop every universal quantifier whose variable does not occur in its body."""
    if isinstance(a, ForAll):
        body = erase_dummy_foralls(a.body)
        if a.name not in body.free_names:
            return body
        return ForAll(a.name, a.type, body)
    if isinstance(a, Exists):
        return Exists(a.name, a.type, erase_dummy_foralls(a.body))
    if isinstance(a, CONNECTIVES):
        return type(a)(erase_dummy_foralls(a.left), erase_dummy_foralls(a.right))
    return a


def expand_higher_eq(lhs: Term, rhs: Term, supply: NameSupply | None = None) -> Formula:
    """Pointwise equality: ``f = g`` at ``r1 -> ... -> rk -> 0`` becomes
    ``!v1:r1 ... !vk:rk. f v1 ... vk = g v1 ... vk``."""
    lt, rt = infer_type(lhs), infer_type(rhs)
    if lt != rt:
        raise TypeMismatch(f"equation between {lhs} : {lt} and {rhs} : {rt}")
    args, _ = uncurry(lt)
    if supply is None:
        supply = NameSupply()
    supply.reserve(lhs.all_names | rhs.all_names)
    vs = [supply.fresh(t, prefix="v") for t in args]
    return forall_block(vs, Eq(apply(lhs, *vs), apply(rhs, *vs)))
