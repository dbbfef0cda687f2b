"""Immutable expression trees over the coordinates (t, x, y, z).

Nodes are hash-consed only in the weak sense that every node caches its
own hash and free-variable set at construction, so structural equality,
hashing and dependency queries are cheap on deep trees.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Union

VARIABLES = ("t", "x", "y", "z")
FUNCTIONS = ("sin", "cos", "exp")

Scalar = Union[int, Fraction]


class Expr:
    __slots__ = ("_hash", "_free")

    # Precedence used by the renderer: 0 sum, 1 term, 2 factor, 3 atom.
    prec = 3

    def children(self) -> tuple[Expr, ...]:
        return ()

    def _key(self) -> tuple:
        raise NotImplementedError

    def _init(self) -> None:
        self._hash = hash((type(self).__name__, self._key()))
        free: frozenset[str] = frozenset()
        for c in self.children():
            free |= c._free
        self._free = free

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Expr) or type(self) is not type(other):
            return NotImplemented if not isinstance(other, Expr) else False
        return self._hash == other._hash and self._key() == other._key()

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    @property
    def free_vars(self) -> frozenset[str]:
        return self._free

    def walk(self) -> Iterator[Expr]:
        yield self
        for c in self.children():
            yield from c.walk()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children())

    # Arithmetic builds raw (unsimplified) trees.
    def __add__(self, other):
        return Add((self, as_expr(other)))

    def __radd__(self, other):
        return Add((as_expr(other), self))

    def __sub__(self, other):
        return Add((self, Neg(as_expr(other))))

    def __rsub__(self, other):
        return Add((as_expr(other), Neg(self)))

    def __mul__(self, other):
        return Mul((self, as_expr(other)))

    def __rmul__(self, other):
        return Mul((as_expr(other), self))

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __pow__(self, n: int):
        return Pow(self, n)

    def __neg__(self):
        return Neg(self)

    def __str__(self) -> str:
        from .render import render

        return render(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class Num(Expr):
    __slots__ = ("value",)

    def __init__(self, value: Scalar | str):
        v = Fraction(value)
        self.value = v
        self._init()

    def _key(self):
        return (self.value,)

    @property
    def prec(self):  # type: ignore[override]
        if self.value < 0:
            return 2
        if self.value.denominator != 1 and not _terminates(self.value.denominator):
            return 1
        return 3


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")
        self.name = name
        self._init()
        self._free = frozenset((name,))

    def _key(self):
        return (self.name,)


class Add(Expr):
    __slots__ = ("terms",)
    prec = 0

    def __init__(self, terms):
        terms = tuple(terms)
        if len(terms) < 2:
            raise ValueError("Add needs at least two terms")
        self.terms = terms
        self._init()

    def children(self):
        return self.terms

    def _key(self):
        return self.terms


class Mul(Expr):
    __slots__ = ("factors",)
    prec = 1

    def __init__(self, factors):
        factors = tuple(factors)
        if len(factors) < 2:
            raise ValueError("Mul needs at least two factors")
        self.factors = factors
        self._init()

    def children(self):
        return self.factors

    def _key(self):
        return self.factors


class Div(Expr):
    __slots__ = ("num", "den")
    prec = 1

    def __init__(self, num: Expr, den: Expr):
        self.num = num
        self.den = den
        self._init()

    def children(self):
        return (self.num, self.den)

    def _key(self):
        return (self.num, self.den)


class Neg(Expr):
    __slots__ = ("arg",)
    prec = 2

    def __init__(self, arg: Expr):
        self.arg = arg
        self._init()

    def children(self):
        return (self.arg,)

    def _key(self):
        return (self.arg,)


class Pow(Expr):
    __slots__ = ("base", "exp")
    prec = 2

    def __init__(self, base: Expr, exp: int):
        if isinstance(exp, bool) or not isinstance(exp, int):
            raise TypeError("exponents must be integers")
        self.base = base
        self.exp = exp
        self._init()

    def children(self):
        return (self.base,)

    def _key(self):
        return (self.base, self.exp)


class Func(Expr):
    __slots__ = ("name", "arg")

    def __init__(self, name: str, arg: Expr):
        if name not in FUNCTIONS:
            raise ValueError(f"unknown function {name!r}; expected one of {FUNCTIONS}")
        self.name = name
        self.arg = arg
        self._init()

    def children(self):
        return (self.arg,)

    def _key(self):
        return (self.name, self.arg)


ZERO = Num(0)
ONE = Num(1)
T, X, Y, Z = (Var(n) for n in VARIABLES)


def _terminates(den: int) -> bool:
    for p in (2, 5):
        while den % p == 0:
            den //= p
    return den == 1


def as_expr(value) -> Expr:
    """Coerce ints, Fractions and expression strings to an Expr."""
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not expressions")
    if isinstance(value, (int, Fraction)):
        return Num(value)
    if isinstance(value, str):
        from .parser import parse_expr

        return parse_expr(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an expression")


def sin(e) -> Expr:
    return Func("sin", as_expr(e))


def cos(e) -> Expr:
    return Func("cos", as_expr(e))


def exp(e) -> Expr:
    return Func("exp", as_expr(e))
