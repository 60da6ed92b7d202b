import pytest
from hypothesis import given, settings, strategies as st

from finterp import (
    NAT, EvalConfig, NotClosed, NotQuantifierFree, StepBudgetExceeded,
    TypeMismatch, alpha_eq, decide_qf, eval_nat, infer_type, normalize, parse,
    reduction_trace, to_combinators,
)
from finterp.combinators import identity
from finterp.syntax import App, Lam, Var, arrow, numeral, walk

import gen


def T(src, ctx=None):
    return parse("term", src, ctx or {})


def F(src, ctx=None):
    return parse("formula", src, ctx or {})


def loop_rec(n, base, step):
    acc = base
    for k in range(n):
        acc = step(k, acc)
    return acc


STEPS = {
    "r + 3": (lambda k, r: r + 3, "\\k:0. \\r:0. r + 3"),
    "r * 2 + k": (lambda k, r: r * 2 + k, "\\k:0. \\r:0. r * 2 + k"),
    "S (r + k * k)": (lambda k, r: r + k * k + 1, "\\k:0. \\r:0. S (r + k * k)"),
}


class TestNormalize:
    @pytest.mark.parametrize("src, value", [
        ("proj[0,0] 1 2", 1),
        ("rec[0] 2 0 (\\n:0. \\r:0. S (S r))", 4),
        ("2 + 2", 4),
        ("(\\x:0. x * x) 3", 9),
        ("rec[0] 3 1 (\\n:0. \\r:0. r + r)", 8),
        ("7", 7),
        ("subst[0,0,0] (\\a:0. \\b:0. a + b) (\\a:0. S a) 4", 9),
        ("rec[(0->0)] 2 (\\a:0. a) (\\k:0. \\g:1. \\a:0. S (g a)) 5", 7),
        ("add 2 (mul 3 4)", 14),
        ("succ 0", 1),
    ])
    def test_values(self, src, value):
        assert eval_nat(T(src)) == value

    def test_open_term_stops_at_variable(self):
        ctx = {"f": parse("type", "1"), "x": NAT}
        assert normalize(T("(\\a:0. f a) (1 + 1)", ctx), ctx=ctx) == T("f 2", ctx)

    def test_add_waits_for_numerals(self):
        ctx = {"x": NAT}
        assert normalize(T("x + (1 + 1)", ctx), ctx=ctx) == T("x + 2", ctx)

    def test_higher_type_normal_form(self):
        assert alpha_eq(normalize(T("(\\f:1. f) (\\a:0. a + (1 + 2))")), T("\\a:0. a + 3"))

    def test_budget(self):
        with pytest.raises(StepBudgetExceeded) as e:
            normalize(T("rec[0] 5 1 (\\n:0. \\r:0. r + r)"), EvalConfig(max_steps=4))
        assert e.value.partial is not None
        assert infer_type(e.value.partial) == NAT
        assert e.value.exit_code == 3

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            EvalConfig(max_steps=0)

    def test_eval_nat_errors(self):
        with pytest.raises(NotClosed):
            eval_nat(Var("x", NAT))
        with pytest.raises(TypeMismatch):
            eval_nat(T("\\a:0. a"))

    def test_deterministic(self):
        t = T("rec[0] 3 2 (\\n:0. \\r:0. r * n + 1)")
        assert normalize(t) == normalize(t)


class TestTrace:
    def test_starts_and_ends(self):
        t = T("(\\x:0. x + 1) 2")
        steps = reduction_trace(t)
        assert steps[0] == t and steps[-1] == numeral(3)
        assert len(steps) == 3

    @settings(max_examples=100, deadline=None)
    @given(gen.closed_nat_terms())
    def test_subject_reduction(self, t):
        steps = reduction_trace(t, EvalConfig(trace=True))
        assert all(infer_type(s) == NAT for s in steps)
        assert steps[-1] == numeral(eval_nat(t))

    @settings(max_examples=60, deadline=None)
    @given(gen.terms(arrow(NAT, NAT, NAT), ctx={}, depth=3))
    def test_subject_reduction_higher(self, t):
        ty = infer_type(t)
        assert all(infer_type(s) == ty for s in reduction_trace(t))


class TestDecide:
    @pytest.mark.parametrize("src, value", [
        ("S 0 + S 0 = 2", True),
        ("0 = S 0", False),
        ("(0 = 0) -> bot", False),
        ("bot -> bot", True),
        ("0 = 1 | 2 * 2 = 4", True),
        ("~ 0 = 1 & 1 = 1", True),
    ])
    def test_values(self, src, value):
        assert decide_qf(F(src)) is value

    def test_quantified(self):
        with pytest.raises(NotQuantifierFree):
            decide_qf(F("!x:0. x = x"))

    def test_open(self):
        with pytest.raises(NotClosed):
            decide_qf(F("x = 0", {"x": NAT}))

    def test_budget_shared_across_atoms(self):
        a = F("rec[0] 3 1 (\\n:0. \\r:0. r + r) = 8 & rec[0] 3 1 (\\n:0. \\r:0. r + r) = 8")
        one = len(reduction_trace(T("rec[0] 3 1 (\\n:0. \\r:0. r + r)"))) - 1
        assert decide_qf(a, EvalConfig(max_steps=2 * one))
        with pytest.raises(StepBudgetExceeded):
            decide_qf(a, EvalConfig(max_steps=2 * one - 1))


@pytest.mark.parametrize("name", STEPS)
@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("base", range(6))
def test_recursor_matches_loop(name, n, base):
    fn, src = STEPS[name]
    t = App(App(App(T("rec[0]"), numeral(n)), numeral(base)), T(src))
    assert eval_nat(t) == loop_rec(n, base, fn)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 8), st.integers(0, 5), st.integers(0, 4))
def test_recursor_law_random(n, base, c):
    step = f"\\k:0. \\r:0. r + {c}"
    t = App(App(App(T("rec[0]"), numeral(n)), numeral(base)), T(step))
    assert eval_nat(t) == loop_rec(n, base, lambda k, r: r + c)


class TestCombinators:
    def test_identity_form(self):
        got = to_combinators(T("\\x:0. x"))
        assert got == T("subst[0,(0->0),0] proj[0,(0->0)] proj[0,0]")
        assert got == identity(NAT)
        for k in range(6):
            assert eval_nat(App(got, numeral(k))) == k

    def test_constant_untouched(self):
        assert to_combinators(T("0")) == T("0")

    def test_successor(self):
        got = to_combinators(T("\\x:0. S x"))
        assert not any(isinstance(n, Lam) for n in walk(got))
        assert infer_type(got) == parse("type", "1")
        assert [eval_nat(App(got, numeral(k))) for k in range(6)] == [1, 2, 3, 4, 5, 6]

    def test_keeps_type_of_open_terms(self):
        ctx = {"y": NAT}
        t = T("\\x:0. x + y", ctx)
        assert infer_type(to_combinators(t), ctx) == infer_type(t, ctx)

    @settings(max_examples=150, deadline=None)
    @given(gen.closed_nat_terms())
    def test_agrees_with_lambda(self, t):
        c = to_combinators(t)
        assert not any(isinstance(n, Lam) for n in walk(c))
        assert infer_type(c) == NAT
        assert eval_nat(c) == eval_nat(t)

    @settings(max_examples=100, deadline=None)
    @given(gen.terms(parse("type", "1"), ctx={}, depth=3), st.integers(0, 5))
    def test_functions_agree_pointwise(self, f, k):
        assert eval_nat(App(to_combinators(f), numeral(k))) == eval_nat(App(f, numeral(k)))
