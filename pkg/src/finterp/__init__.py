"""Finite-type arithmetic workbench: modified realizability, the Dialectica
interpretation, formula classes and sequential forms of forall-exists sentences."""

from .classify import ClassificationReport, classify, double_negate_primes
from .combinators import to_combinators
from .dialectica import DResult, d_translate, d_types
from .errors import (
    ArityMismatch, FinterpError, InstanceCapExceeded, NotClosed, NotExistsFree,
    NotForallExists, NotGamma1, NotQuantifierFree, ParseError, ShapeUnsupported,
    StepBudgetExceeded, TypeMismatch, UnboundVariable,
)
from .evaluator import EvalConfig, decide_qf, eval_nat, normalize, reduction_trace
from .frontend import SourceText, parse, parse_file, pretty
from .mr import MrResult, gamma1_soundness_formula, mr_apply_terms, mr_translate, mr_types
from .sequential import TheoremReport, applicable_theorems, decompose_forall_exists, sequentialize
from .syntax import (
    BOT, NAT, ONE, ZERO, Add, And, App, Arith, Arrow, Bot, Eq, Exists,
    FiniteType, ForAll, Formula, Imp, Lam, Mul, NameSupply, Nat, Not, Or, Proj,
    Rec, Subst, Succ, Term, Var, Zero, alpha_eq, check_formula,
    erase_dummy_foralls, expand_higher_eq, free_vars, fresh_tuple, infer_type,
    level, numeral, substitute,
)
from .witness import WitnessReport, check_mr_witness, check_witness

__version__ = "0.1.0"
