"""Vector calculus on M and on the time-extended space I x M.

Spatial operators (grad, div, curl, the bracket of fields on M) treat
``t`` as a parameter.  Only :func:`ext_bracket` and the ``xi`` part of an
:class:`ExtendedField` differentiate in ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DegenerateError
from .symexpr import (
    ONE,
    ZERO,
    Expr,
    IdentityConfig,
    Verdict,
    all_zero,
    as_expr,
    differentiate,
    is_zero,
    simplify,
)

SPACE = ("x", "y", "z")


@dataclass(frozen=True)
class VectorField:
    """Components (V_x, V_y, V_z) of V = V_x d/dx + V_y d/dy + V_z d/dz."""

    x: Expr
    y: Expr
    z: Expr

    def __post_init__(self):
        for name in SPACE:
            object.__setattr__(self, name, as_expr(getattr(self, name)))

    @classmethod
    def of(cls, *components) -> VectorField:
        if len(components) == 1:
            components = tuple(components[0])
        if len(components) != 3:
            raise ValueError("a vector field has exactly three components")
        return cls(*components)

    def __iter__(self) -> Iterator[Expr]:
        return iter((self.x, self.y, self.z))

    def __getitem__(self, i: int) -> Expr:
        return (self.x, self.y, self.z)[i]

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(*(simplify(a + b) for a, b in zip(self, other)))

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(*(simplify(a - b) for a, b in zip(self, other)))

    def __neg__(self) -> VectorField:
        return VectorField(*(simplify(-a) for a in self))

    def scale(self, f) -> VectorField:
        f = as_expr(f)
        return VectorField(*(simplify(f * a) for a in self))

    def simplified(self) -> VectorField:
        return VectorField(*(simplify(a) for a in self))

    def apply(self, f) -> Expr:
        """Directional derivative V(f) = V . grad f."""
        f = as_expr(f)
        return simplify(sum_exprs(c * differentiate(f, v) for c, v in zip(self, SPACE)))

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.z})"


ZERO_VECTOR = VectorField(ZERO, ZERO, ZERO)


@dataclass(frozen=True)
class ExtendedField:
    """xi d/dt + u on I x M."""

    xi: Expr
    u: VectorField

    def __post_init__(self):
        object.__setattr__(self, "xi", as_expr(self.xi))
        if not isinstance(self.u, VectorField):
            object.__setattr__(self, "u", VectorField.of(self.u))

    @classmethod
    def suspension(cls, v: VectorField) -> ExtendedField:
        """d/dt + v."""
        return cls(ONE, v)

    @classmethod
    def spatial(cls, w: VectorField) -> ExtendedField:
        return cls(ZERO, w)

    def components(self) -> tuple[Expr, Expr, Expr, Expr]:
        return (self.xi, self.u.x, self.u.y, self.u.z)

    def apply(self, f) -> Expr:
        f = as_expr(f)
        return simplify(self.xi * differentiate(f, "t") + self.u.apply(f))

    def __add__(self, other: ExtendedField) -> ExtendedField:
        return ExtendedField(simplify(self.xi + other.xi), self.u + other.u)

    def __sub__(self, other: ExtendedField) -> ExtendedField:
        return ExtendedField(simplify(self.xi - other.xi), self.u - other.u)

    def __neg__(self) -> ExtendedField:
        return ExtendedField(simplify(-self.xi), -self.u)

    def scale(self, f) -> ExtendedField:
        f = as_expr(f)
        return ExtendedField(simplify(f * self.xi), self.u.scale(f))

    def simplified(self) -> ExtendedField:
        return ExtendedField(simplify(self.xi), self.u.simplified())

    def __str__(self) -> str:
        return f"({self.xi}) d/dt + {self.u}"


def sum_exprs(items) -> Expr:
    items = list(items)
    if not items:
        return ZERO
    out = items[0]
    for e in items[1:]:
        out = out + e
    return out


def vector_is_zero(V: VectorField, cfg: IdentityConfig | None = None) -> Verdict:
    return all_zero(V, cfg)


def extended_is_zero(U: ExtendedField, cfg: IdentityConfig | None = None) -> Verdict:
    return all_zero(U.components(), cfg)


def grad(f) -> VectorField:
    f = as_expr(f)
    return VectorField(*(differentiate(f, v) for v in SPACE))


def div(V: VectorField) -> Expr:
    return simplify(sum_exprs(differentiate(c, v) for c, v in zip(V, SPACE)))


def curl(V: VectorField) -> VectorField:
    d = differentiate
    return VectorField(
        simplify(d(V.z, "y") - d(V.y, "z")),
        simplify(d(V.x, "z") - d(V.z, "x")),
        simplify(d(V.y, "x") - d(V.x, "y")),
    )


def dot(V: VectorField, W: VectorField) -> Expr:
    return simplify(sum_exprs(a * b for a, b in zip(V, W)))


def cross(V: VectorField, W: VectorField) -> VectorField:
    return VectorField(
        simplify(V.y * W.z - V.z * W.y),
        simplify(V.z * W.x - V.x * W.z),
        simplify(V.x * W.y - V.y * W.x),
    )


def lie_bracket3(V: VectorField, W: VectorField) -> VectorField:
    """[V, W]^i = V(W^i) - W(V^i), spatial derivatives only."""
    return VectorField(*(simplify(V.apply(w) - W.apply(v)) for v, w in zip(V, W)))


def ext_bracket(U1: ExtendedField, U2: ExtendedField) -> ExtendedField:
    """Bracket of vector fields on I x M."""
    xi = simplify(U1.apply(U2.xi) - U2.apply(U1.xi))
    u = VectorField(*(simplify(U1.apply(b) - U2.apply(a)) for a, b in zip(U1.u, U2.u)))
    return ExtendedField(xi, u)


def material_derivative(f, v: VectorField) -> Expr:
    """df/dt = f_t + v . grad f."""
    f = as_expr(f)
    return simplify(differentiate(f, "t") + v.apply(f))


def frozen_field_residual(B: VectorField, v: VectorField) -> VectorField:
    """B_t - curl(v x B); vanishes when B is frozen into the flow of v."""
    c = curl(cross(v, B))
    return VectorField(*(simplify(differentiate(b, "t") - ci) for b, ci in zip(B, c)))


def symmetry_residual(U: ExtendedField, v: VectorField) -> ExtendedField:
    """[d/dt + v, U] - (xi_t + v(xi)) (d/dt + v); zero iff U is a symmetry of v."""
    D = ExtendedField.suspension(v)
    lhs = ext_bracket(D, U)
    return lhs - D.scale(material_derivative(U.xi, v))


def weighted_div(V: VectorField, rho, cfg: IdentityConfig | None = None) -> Expr:
    """rho^-1 div(rho V): divergence with respect to the volume rho dx dy dz."""
    rho = simplify(as_expr(rho))
    if rho == ZERO or is_zero(rho, cfg).zero:
        raise DegenerateError(f"density {rho} vanishes identically")
    return simplify(div(V.scale(rho)) / rho)
