"""Rule-based normaliser.

Every tree is mapped to a sum of monomials with exact rational
coefficients.  A monomial is a product of atoms raised to nonzero integer
powers, where an atom is a variable, a function application with a
normalised argument, or a multi-term sum that appears with a negative
power (a denominator).  Products and positive powers of sums are always
distributed, like terms are collected, and monomials are ordered by a
fixed key, so the output is a fixed point: ``simplify(simplify(e))`` is
structurally identical to ``simplify(e)``.

Nothing here decides zero-equivalence for non-polynomial content
(``sin(x)^2 + cos(x)^2 - 1`` stays as it is); that is what the sampling
test in :mod:`.numeric` is for.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .nodes import ONE, ZERO, Add, Div, Expr, Func, Mul, Neg, Num, Pow, Var
from .render import render

# A monomial is a tuple of (atom, exponent) pairs sorted by atom key.
Monomial = tuple
Poly = dict

_ATOM_RANK = {Var: 0, Func: 1, Num: 2, Add: 3}


@lru_cache(maxsize=None)
def _atom_key(atom: Expr) -> tuple:
    return (_ATOM_RANK.get(type(atom), 4), render(atom))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ka, kb = _atom_key(a[i][0]), _atom_key(b[j][0])
        if ka == kb:
            e = a[i][1] + b[j][1]
            if e:
                out.append((a[i][0], e))
            i += 1
            j += 1
        elif ka < kb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _add_into(acc: Poly, p: Poly, scale: Fraction = Fraction(1)) -> None:
    for m, c in p.items():
        v = acc.get(m, 0) + c * scale
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _poly_mul(p: Poly, q: Poly) -> Poly:
    if len(p) > len(q):
        p, q = q, p
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _poly_pow(p: Poly, n: int) -> Poly:
    result: Poly = {(): Fraction(1)}
    base = p
    while n:
        if n & 1:
            result = _poly_mul(result, base)
        n >>= 1
        if n:
            base = _poly_mul(base, base)
    return result


def _poly_inverse_power(p: Poly, n: int) -> Poly:
    """p^(-n) for n > 0."""
    if len(p) == 1:
        ((m, c),) = p.items()
        out: Poly = {(): Fraction(1) / c**n}
        for atom, e in m:
            out = _poly_mul(out, _atom_power(atom, -e * n))
        return out
    if not p:
        return {((ZERO, -n),): Fraction(1)}
    # Pull out the leading coefficient so the denominator atom is monic.
    lead = p[_sorted_monomials(p)[0]]
    monic = {m: c / lead for m, c in p.items()}
    atom = _from_poly(monic)
    return {((atom, -n),): Fraction(1) / lead**n}


def _atom_power(atom: Expr, e: int) -> Poly:
    if isinstance(atom, Add) and e > 0:
        return _poly_pow(_to_poly(atom), e)
    return {((atom, e),): Fraction(1)}


@lru_cache(maxsize=200_000)
def _to_poly_cached(e: Expr) -> tuple:
    return tuple(_to_poly_raw(e).items())


def _to_poly(e: Expr) -> Poly:
    return dict(_to_poly_cached(e))


def _to_poly_raw(e: Expr) -> Poly:
    if isinstance(e, Num):
        return {(): e.value} if e.value else {}
    if isinstance(e, Var):
        return {((e, 1),): Fraction(1)}
    if isinstance(e, Add):
        acc: Poly = {}
        for t in e.terms:
            _add_into(acc, _to_poly(t))
        return acc
    if isinstance(e, Neg):
        return {m: -c for m, c in _to_poly(e.arg).items()}
    if isinstance(e, Mul):
        acc = {(): Fraction(1)}
        for f in e.factors:
            p = _to_poly(f)
            if not p:
                return {}
            acc = _poly_mul(acc, p)
            if not acc:
                return {}
        return acc
    if isinstance(e, Div):
        num = _to_poly(e.num)
        if not num:
            return {}
        return _poly_mul(num, _poly_inverse_power(_to_poly(e.den), 1))
    if isinstance(e, Pow):
        if e.exp == 0:
            return {(): Fraction(1)}
        base = _to_poly(e.base)
        if e.exp > 0:
            return _poly_pow(base, e.exp) if base else {}
        return _poly_inverse_power(base, -e.exp)
    if isinstance(e, Func):
        arg = simplify(e.arg)
        if arg == ZERO:
            return {} if e.name == "sin" else {(): Fraction(1)}
        return {((Func(e.name, arg), 1),): Fraction(1)}
    raise TypeError(f"cannot simplify {type(e).__name__}")


def _mono_degree(m: Monomial) -> int:
    return sum(abs(e) for _, e in m)


def _mono_key(m: Monomial) -> tuple:
    return (not m, _mono_degree(m), tuple((_atom_key(a), -e) for a, e in m))


def _sorted_monomials(p: Poly) -> list:
    return sorted(p, key=_mono_key)


def _mono_expr(m: Monomial, coeff: Fraction) -> Expr:
    factors: list[Expr] = []
    mag = abs(coeff)
    if mag != 1 or not m:
        factors.append(Num(mag))
    for atom, e in m:
        factors.append(atom if e == 1 else Pow(atom, e))
    body = factors[0] if len(factors) == 1 else Mul(factors)
    return Neg(body) if coeff < 0 else body


def _from_poly(p: Poly) -> Expr:
    if not p:
        return ZERO
    terms = [_mono_expr(m, p[m]) for m in _sorted_monomials(p)]
    return terms[0] if len(terms) == 1 else Add(terms)


@lru_cache(maxsize=200_000)
def simplify(e: Expr) -> Expr:
    """Return the normal form of ``e`` (pointwise equal wherever ``e`` is defined)."""
    if isinstance(e, (Var,)) or e is ZERO or e is ONE:
        return e
    return _from_poly(_to_poly(e))


def terms_of(e: Expr) -> tuple[Expr, ...]:
    """Additive terms of an expression (a non-sum is its own single term)."""
    return e.terms if isinstance(e, Add) else (e,)


def is_structurally_zero(e: Expr) -> bool:
    return simplify(e) == ZERO


def coefficient_constant(e: Expr) -> Fraction | None:
    """The exact value of ``e`` if it normalises to a rational constant."""
    s = simplify(e)
    if isinstance(s, Num):
        return s.value
    if isinstance(s, Neg) and isinstance(s.arg, Num):
        return -s.arg.value
    return None
