"""Exact partial derivatives."""

from __future__ import annotations

from functools import lru_cache

from .nodes import ONE, VARIABLES, ZERO, Add, Div, Expr, Func, Mul, Neg, Num, Pow, Var
from .simplify import simplify


@lru_cache(maxsize=200_000)
def _d(e: Expr, var: str) -> Expr:
    if var not in e.free_vars:
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Add):
        parts = [_d(t, var) for t in e.terms]
        parts = [p for p in parts if p != ZERO]
        if not parts:
            return ZERO
        return parts[0] if len(parts) == 1 else Add(parts)
    if isinstance(e, Neg):
        return Neg(_d(e.arg, var))
    if isinstance(e, Mul):
        parts = []
        fs = e.factors
        for i, f in enumerate(fs):
            df = _d(f, var)
            if df == ZERO:
                continue
            parts.append(Mul(fs[:i] + (df,) + fs[i + 1 :]))
        return parts[0] if len(parts) == 1 else Add(parts)
    if isinstance(e, Div):
        # (a/b)' = a'/b - a b' / b^2
        a, b = e.num, e.den
        return Add((Div(_d(a, var), b), Neg(Div(Mul((a, _d(b, var))), Pow(b, 2)))))
    if isinstance(e, Pow):
        return Mul((Num(e.exp), Pow(e.base, e.exp - 1), _d(e.base, var)))
    if isinstance(e, Func):
        inner = _d(e.arg, var)
        if e.name == "sin":
            outer: Expr = Func("cos", e.arg)
        elif e.name == "cos":
            outer = Neg(Func("sin", e.arg))
        else:
            outer = e
        return Mul((outer, inner))
    if isinstance(e, Num):
        return ZERO
    raise TypeError(f"cannot differentiate {type(e).__name__}")


def differentiate(f: Expr, var: str) -> Expr:
    """Simplified partial derivative of ``f`` with respect to ``var``."""
    if var not in VARIABLES:
        raise ValueError(f"unknown variable {var!r}")
    return simplify(_d(simplify(f), var))
