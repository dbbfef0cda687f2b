"""Scalar expression engine: trees, parser, derivatives, normal form, sampling."""

from .calculus import differentiate
from .nodes import (
    FUNCTIONS,
    ONE,
    VARIABLES,
    ZERO,
    Add,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Num,
    Pow,
    T,
    Var,
    X,
    Y,
    Z,
    as_expr,
    cos,
    exp,
    sin,
)
from .numeric import (
    DEFAULT_SEED,
    IdentityConfig,
    SamplePoint,
    Verdict,
    all_zero,
    central_difference,
    eval_at,
    evaluate_many,
    is_zero,
)
from .parser import parse_expr
from .render import render
from .simplify import coefficient_constant, simplify, terms_of

__all__ = [
    "Add", "DEFAULT_SEED", "Div", "Expr", "FUNCTIONS", "Func", "IdentityConfig", "Mul",
    "Neg", "Num", "ONE", "Pow", "SamplePoint", "T", "VARIABLES", "Var", "Verdict", "X",
    "Y", "Z", "ZERO", "all_zero", "as_expr", "central_difference", "coefficient_constant",
    "cos", "differentiate", "eval_at", "evaluate_many", "exp", "is_zero", "parse_expr",
    "render", "sin", "simplify", "terms_of",
]
