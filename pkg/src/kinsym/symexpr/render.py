"""Text rendering that the parser reads back to the same tree."""

from __future__ import annotations

from fractions import Fraction

from .nodes import Add, Div, Expr, Func, Mul, Neg, Num, Pow, Var


def render_number(v: Fraction) -> str:
    if v < 0:
        return "-" + render_number(-v)
    if v.denominator == 1:
        return str(v.numerator)
    den = v.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{v.numerator}/{v.denominator}"
    places = max(twos, fives)
    scaled = v.numerator * 10**places // v.denominator
    whole, frac = divmod(scaled, 10**places)
    return f"{whole}.{frac:0{places}d}"


def render(e: Expr) -> str:
    return _r(e, 0)


def _wrap(e: Expr, min_prec: int) -> str:
    s = _r(e, min_prec)
    return f"({s})" if e.prec < min_prec else s


def _r(e: Expr, ctx: int) -> str:
    if isinstance(e, Num):
        return render_number(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({_r(e.arg, 0)})"
    if isinstance(e, Add):
        # Nested sums are parenthesised so the parser does not flatten them.
        parts = [_wrap(e.terms[0], 1)]
        for term in e.terms[1:]:
            if isinstance(term, Neg):
                parts.append(" - " + _wrap(term.arg, 1))
            else:
                parts.append(" + " + _wrap(term, 1))
        return "".join(parts)
    if isinstance(e, Mul):
        return "*".join(_wrap(f, 2) for f in e.factors)
    if isinstance(e, Div):
        left = e.num
        lhs = _r(left, 1) if left.prec >= 1 else f"({_r(left, 0)})"
        return f"{lhs}/{_wrap(e.den, 2)}"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 2)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, 3)}^{e.exp}"
    raise TypeError(f"cannot render {type(e).__name__}")
