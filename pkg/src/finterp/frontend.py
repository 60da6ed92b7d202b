"""Concrete syntax: tokenizer, parser and pretty-printer.

Grammar (ASCII)::

    type    := "0" | "1" | "(" type ")" | type "->" type          (right-assoc)
    term    := ident | decimal | "S" atom | term "+" term | term "*" term
             | "proj[" type "," type "]" | "subst[" type "," type "," type "]"
             | "rec[" type "]" | "succ" | "add" | "mul"
             | term term | "\\" ident ":" type "." term | "(" term ")"
    formula := "bot" | term "=" term | term "=(" type ")" term
             | formula "&" formula | formula "|" formula | formula "->" formula
             | "~" formula | "!" ident ":" type "." formula
             | "?" ident ":" type "." formula | "(" formula ")"

Precedence, loosest first: ``->`` (right), ``|``, ``&``, ``~``.  In terms
``+`` is looser than ``*``, which is looser than application.  Quantifiers
and lambdas extend as far right as possible.

Files hold ``var x : T.`` declarations followed by ``formula NAME := A.`` and
``term NAME := t.`` stanzas; ``#`` starts a line comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import ParseError, TypeMismatch, UnboundVariable
from .syntax import (
    ARITH_OPS, BOT, NAT, ONE, Add, And, App, Arith, Arrow, Bot, Eq, Exists,
    FiniteType, ForAll, Formula, Imp, Lam, Mul, NameSupply, Nat, Or, Proj, Rec,
    Subst, Succ, Term, Var, as_numeral, expand_higher_eq, infer_type,
    numeral,
)

KEYWORDS = {"S", "bot", "proj", "subst", "rec", "var", "formula", "term"} | set(ARITH_OPS)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<assign>:=)
  | (?P<arrow>->)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[=()\[\],.:!?\\~&|+*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


@dataclass(frozen=True)
class SourceText:
    text: str
    origin: str = "<string>"

    def position(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col


def tokenize(src: SourceText) -> list[Token]:
    out = []
    pos = 0
    text = src.text
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            line, col = src.position(pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col, src.origin)
        kind = m.lastgroup
        if kind != "ws":
            if kind == "ident" and m.group() in KEYWORDS:
                kind = "kw"
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class _Fail(Exception):
    def __init__(self, pos, message):
        self.pos = pos
        self.message = message


class Parser:
    def __init__(self, src: SourceText, ctx: dict | None = None):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.ctx = dict(ctx or {})
        self.furthest: _Fail | None = None

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text, kind=None) -> bool:
        t = self.tok
        return t.text == text and (kind is None or t.kind == kind)

    def fail(self, message):
        err = _Fail(self.i, message)
        if self.furthest is None or err.pos >= self.furthest.pos:
            self.furthest = err
        raise err

    def expect(self, text) -> Token:
        if self.tok.text != text:
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.fail(f"expected identifier, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t.text

    def error(self, f: _Fail | None = None) -> ParseError:
        f = f or self.furthest
        tok = self.toks[min(f.pos, len(self.toks) - 1)]
        line, col = self.src.position(tok.offset)
        return ParseError(f.message, line, col, self.src.origin)

    def elab_error(self, exc, start: int):
        line, col = self.src.position(self.toks[start].offset)
        return type(exc)(f"{self.src.origin}:{line}:{col}: {exc}")

    # -- types

    def type_(self) -> FiniteType:
        left = self.type_atom()
        if self.at("->"):
            self.i += 1
            return Arrow(left, self.type_())
        return left

    def type_atom(self) -> FiniteType:
        t = self.tok
        if t.text == "0" and t.kind == "num":
            self.i += 1
            return NAT
        if t.text == "1" and t.kind == "num":
            self.i += 1
            return ONE
        if t.text == "(":
            self.i += 1
            ty = self.type_()
            self.expect(")")
            return ty
        self.fail(f"expected a type, found {t.text or 'end of input'!r}")

    # -- terms; ``env`` maps bound names to types

    def term(self, env) -> Term:
        if self.at("\\"):
            return self.lam(env)
        left = self.product(env)
        while self.at("+"):
            self.i += 1
            left = Add(left, self.product(env))
        return left

    def lam(self, env) -> Term:
        self.expect("\\")
        name = self.ident()
        self.expect(":")
        ty = self.type_()
        self.expect(".")
        return Lam(name, ty, self.term({**env, name: ty}))

    def product(self, env) -> Term:
        left = self.application(env)
        while self.at("*"):
            self.i += 1
            left = Mul(left, self.application(env))
        return left

    def application(self, env) -> Term:
        head = self.atom(env)
        while True:
            if self.at("\\"):
                head = App(head, self.lam(env))
                return head
            if not self.starts_atom():
                return head
            head = App(head, self.atom(env))

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("ident", "num"):
            return True
        if t.kind == "kw":
            return t.text in ("S", "proj", "subst", "rec") or t.text in ARITH_OPS
        return t.text == "("

    def atom(self, env) -> Term:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return numeral(int(t.text))
        if t.kind == "ident":
            self.i += 1
            if t.text in env:
                return Var(t.text, env[t.text])
            if t.text in self.ctx:
                return Var(t.text, self.ctx[t.text])
            line, col = self.src.position(t.offset)
            raise UnboundVariable(f"{self.src.origin}:{line}:{col}: undeclared variable {t.text}")
        if t.text == "(":
            self.i += 1
            inner = self.term(env)
            self.expect(")")
            return inner
        if t.kind == "kw":
            if t.text == "S":
                self.i += 1
                return Succ(self.atom(env))
            if t.text in ARITH_OPS:
                self.i += 1
                return Arith(t.text)
            if t.text in ("proj", "subst", "rec"):
                self.i += 1
                self.expect("[")
                types = [self.type_()]
                while self.at(","):
                    self.i += 1
                    types.append(self.type_())
                self.expect("]")
                want = {"proj": 2, "subst": 3, "rec": 1}[t.text]
                if len(types) != want:
                    self.fail(f"{t.text}[...] takes {want} type argument(s)")
                return {"proj": Proj, "subst": Subst, "rec": Rec}[t.text](*types)
        self.fail(f"expected a term, found {t.text or 'end of input'!r}")

    # -- formulas

    def formula(self, env) -> Formula:
        left = self.disjunction(env)
        if self.at("->"):
            self.i += 1
            return Imp(left, self.formula(env))
        return left

    def disjunction(self, env) -> Formula:
        left = self.conjunction(env)
        while self.at("|"):
            self.i += 1
            left = Or(left, self.conjunction(env))
        return left

    def conjunction(self, env) -> Formula:
        left = self.unary(env)
        while self.at("&"):
            self.i += 1
            left = And(left, self.unary(env))
        return left

    def unary(self, env) -> Formula:
        if self.at("~"):
            self.i += 1
            return Imp(self.unary(env), BOT)
        if self.at("!") or self.at("?"):
            quant = ForAll if self.tok.text == "!" else Exists
            self.i += 1
            name = self.ident()
            self.expect(":")
            ty = self.type_()
            self.expect(".")
            return quant(name, ty, self.formula({**env, name: ty}))
        if self.at("bot", "kw"):
            self.i += 1
            return BOT
        start = self.i
        try:
            return self.equation(env)
        except _Fail:
            self.i = start
        if self.at("("):
            self.i += 1
            inner = self.formula(env)
            self.expect(")")
            return inner
        self.fail(f"expected a formula, found {self.tok.text or 'end of input'!r}")

    def equation(self, env) -> Formula:
        start = self.i
        lhs = self.term(env)
        eq = self.expect("=")
        declared = None
        if self.at("(") and self.tok.offset == eq.offset + 1:
            # ``=(T)`` with no space is a typed equation; otherwise, or if no
            # type follows, the parenthesis opens the right-hand term.
            save = self.i
            try:
                self.i += 1
                declared = self.type_()
                self.expect(")")
            except _Fail:
                self.i = save
                declared = None
        rhs = self.term(env)
        return self.elaborate_eq(lhs, rhs, declared, start)

    def elaborate_eq(self, lhs, rhs, declared, start) -> Formula:
        try:
            lt, rt = infer_type(lhs), infer_type(rhs)
            if declared is not None and (lt != declared or rt != declared):
                raise TypeMismatch(f"equation at declared type {pretty(declared)} between {pretty(lhs)} : {pretty(lt)} and {pretty(rhs)} : {pretty(rt)}")
            if lt == NAT and rt == NAT:
                return Eq(lhs, rhs)
            return expand_higher_eq(lhs, rhs, NameSupply())
        except TypeMismatch as exc:
            raise self.elab_error(exc, start) from None

    def finish(self):
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self.tok.text!r}")

    def run(self, rule, *args):
        try:
            return rule(*args)
        except _Fail:
            raise self.error() from None


def _source(src) -> SourceText:
    return src if isinstance(src, SourceText) else SourceText(src)


def parse(kind: str, src: Union[str, SourceText], ctx=None):
    """Parse ``src`` as a ``"type"``, ``"term"`` or ``"formula"``.

    ``ctx`` maps free variable names to their types.
    """
    p = Parser(_source(src), _ctx_dict(ctx))
    rules = {"type": lambda: p.type_(), "term": lambda: p.term({}), "formula": lambda: p.formula({})}
    if kind not in rules:
        raise ValueError(f"unknown kind {kind!r}")

    def whole():
        node = rules[kind]()
        p.finish()
        return node

    node = p.run(whole)
    if kind == "term":
        try:
            infer_type(node)
        except TypeMismatch as exc:
            raise p.elab_error(exc, 0) from None
    return node


def _ctx_dict(ctx) -> dict:
    if ctx is None:
        return {}
    if isinstance(ctx, dict):
        return ctx
    return {(v.name if isinstance(v, Var) else v[0]): (v.type if isinstance(v, Var) else v[1]) for v in ctx}


# ---------------------------------------------------------------- files


@dataclass(frozen=True)
class Item:
    name: str
    kind: str  # "formula" | "term"
    node: Union[Term, Formula]
    line: int


@dataclass
class Document:
    origin: str
    vars: dict = field(default_factory=dict)
    items: list = field(default_factory=list)

    def get(self, name: str) -> Item:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)


def parse_file(text: str, origin: str = "<string>") -> Document:
    src = SourceText(text, origin)
    p = Parser(src)
    doc = Document(origin)

    def stanzas():
        while p.tok.kind != "eof":
            start = p.tok
            if p.at("var", "kw"):
                p.i += 1
                name = p.ident()
                p.expect(":")
                ty = p.type_()
                p.expect(".")
                doc.vars[name] = ty
                p.ctx[name] = ty
            elif p.at("formula", "kw") or p.at("term", "kw"):
                kind = p.tok.text
                p.i += 1
                name = p.ident()
                if any(it.name == name for it in doc.items):
                    p.fail(f"duplicate item name {name}")
                p.expect(":=")
                node = p.formula({}) if kind == "formula" else p.term({})
                p.expect(".")
                if kind == "term":
                    try:
                        infer_type(node)
                    except TypeMismatch as exc:
                        raise p.elab_error(exc, p.toks.index(start)) from None
                doc.items.append(Item(name, kind, node, src.position(start.offset)[0]))
            else:
                p.fail(f"expected 'var', 'formula' or 'term', found {p.tok.text!r}")

    p.run(stanzas)
    return doc


# ---------------------------------------------------------------- printing

# formula precedence levels
_F_QUANT, _F_IMP, _F_OR, _F_AND, _F_ATOM = 0, 1, 2, 3, 5
# term precedence levels
_T_LAM, _T_SUM, _T_PROD, _T_APP, _T_ATOM = 0, 1, 2, 3, 4


def pretty(node) -> str:
    """Render a type, term or formula in the concrete syntax above."""
    if isinstance(node, FiniteType):
        return _type(node)
    if isinstance(node, Term):
        return _term(node, _T_LAM)
    if isinstance(node, Formula):
        return _formula(node, _F_QUANT)
    raise TypeError(f"cannot print {node!r}")


def _type(t: FiniteType) -> str:
    if isinstance(t, Nat):
        return "0"
    return f"({_type(t.dom)}->{_type(t.cod)})"


def _paren(s: str, inner: int, outer: int) -> str:
    return f"({s})" if inner < outer else s


def _term(t: Term, ctx: int) -> str:
    n = as_numeral(t)
    if n is not None:
        return str(n)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return _paren("S " + _term(t.arg, _T_ATOM), _T_APP, ctx)
    if isinstance(t, Add):
        return _paren(f"{_term(t.left, _T_SUM)} + {_term(t.right, _T_PROD)}", _T_SUM, ctx)
    if isinstance(t, Mul):
        return _paren(f"{_term(t.left, _T_PROD)} * {_term(t.right, _T_APP)}", _T_PROD, ctx)
    if isinstance(t, App):
        return _paren(f"{_term(t.fun, _T_APP)} {_term(t.arg, _T_ATOM)}", _T_APP, ctx)
    if isinstance(t, Lam):
        return _paren(f"\\{t.name}:{_type(t.type)}. {_term(t.body, _T_LAM)}", _T_LAM, ctx)
    if isinstance(t, Proj):
        return f"proj[{_type(t.rho)},{_type(t.tau)}]"
    if isinstance(t, Subst):
        return f"subst[{_type(t.delta)},{_type(t.rho)},{_type(t.tau)}]"
    if isinstance(t, Rec):
        return f"rec[{_type(t.sigma)}]"
    if isinstance(t, Arith):
        return t.op
    raise TypeError(f"cannot print {t!r}")


def _formula(a: Formula, ctx: int, tail: bool = True) -> str:
    # ``tail``: nothing follows this subformula, so a quantifier needs no
    # parentheses even inside an operator.
    if isinstance(a, Bot):
        return "bot"
    if isinstance(a, Eq):
        return f"{_term(a.lhs, _T_SUM)} = {_term(a.rhs, _T_SUM)}"
    if isinstance(a, (ForAll, Exists)):
        q = "!" if isinstance(a, ForAll) else "?"
        s = f"{q}{a.name}:{_type(a.type)}. {_formula(a.body, _F_QUANT)}"
        return s if tail or ctx == _F_QUANT else f"({s})"
    if isinstance(a, Imp):
        level, lctx, rctx = _F_IMP, _F_OR, _F_IMP
    elif isinstance(a, Or):
        level, lctx, rctx = _F_OR, _F_OR, _F_AND
    elif isinstance(a, And):
        level, lctx, rctx = _F_AND, _F_AND, _F_ATOM
    else:
        raise TypeError(f"cannot print {a!r}")
    op = {Imp: "->", Or: "|", And: "&"}[type(a)]
    wrapped = level < ctx
    inner_tail = tail or wrapped
    s = f"{_formula(a.left, lctx, False)} {op} {_formula(a.right, rctx, inner_tail)}"
    return f"({s})" if wrapped else s
