"""Seeded generators of random expressions, used by the property suites."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .nodes import FUNCTIONS, VARIABLES, Add, Div, Expr, Func, Mul, Neg, Num, Pow, Var


def random_polynomial(
    rng: random.Random,
    basis: Sequence[Expr] | None = None,
    degree: int = 2,
    terms: int = 3,
    coeff_range: int = 3,
) -> Expr:
    """Sum of ``terms`` monomials in ``basis`` with small nonzero integer coefficients."""
    basis = list(basis) if basis is not None else [Var(v) for v in VARIABLES]
    out: list[Expr] = []
    for _ in range(terms):
        c = rng.choice([k for k in range(-coeff_range, coeff_range + 1) if k])
        factors: list[Expr] = [Num(c)]
        for _ in range(rng.randint(0, degree)):
            factors.append(rng.choice(basis))
        out.append(factors[0] if len(factors) == 1 else Mul(factors))
    return out[0] if len(out) == 1 else Add(out)


def random_expr(rng: random.Random, depth: int = 8, safe_division: bool = True) -> Expr:
    """Random tree of the given maximum depth, in the parser's image.

    With ``safe_division`` every denominator is bounded away from zero
    (``2 + sin(..)``, ``exp(..)`` or ``1 + u^2``), which keeps finite
    difference checks well conditioned.
    """
    if depth <= 1 or rng.random() < 0.3:
        return _leaf(rng)
    kind = rng.choices(
        ["add", "mul", "div", "neg", "pow", "func"], weights=[5, 4, 1, 1, 2, 3]
    )[0]
    sub = depth - 1
    if kind == "add":
        return Add([random_expr(rng, sub, safe_division) for _ in range(rng.randint(2, 3))])
    if kind == "mul":
        return Mul([random_expr(rng, sub, safe_division) for _ in range(2)])
    if kind == "div":
        num = random_expr(rng, sub, safe_division)
        if safe_division:
            return Div(num, _safe_denominator(rng, max(sub - 1, 1)))
        return Div(num, random_expr(rng, sub, safe_division))
    if kind == "neg":
        return Neg(random_expr(rng, sub, safe_division))
    if kind == "pow":
        return Pow(random_expr(rng, min(sub, 2), safe_division), rng.randint(0, 3))
    return Func(rng.choice(FUNCTIONS), random_expr(rng, min(sub, 3), safe_division))


def _safe_denominator(rng: random.Random, depth: int) -> Expr:
    inner = random_expr(rng, min(depth, 3), True)
    choice = rng.randrange(3)
    if choice == 0:
        return Add((Num(2), Func("sin", inner)))
    if choice == 1:
        return Func("exp", inner)
    return Add((Num(1), Pow(inner, 2)))


def _leaf(rng: random.Random) -> Expr:
    if rng.random() < 0.65:
        return Var(rng.choice(VARIABLES))
    if rng.random() < 0.8:
        return Num(rng.randint(0, 5))
    return Num(Fraction(rng.randint(1, 9), rng.choice([2, 4, 5, 10])))
