"""Differential forms on I x M and the Hamiltonian structure of the suspension.

Coordinates are ordered (t, x, y, z) = indices (0, 1, 2, 3).  A two-form is
stored as its antisymmetric coefficient matrix, omega = sum_{mu<nu}
omega[mu][nu] dx^mu ^ dx^nu, and ``-a . dx ^ dt`` is entered as
``+a_i`` in row ``t``: omega[0][i] = a_i.  Every sign below follows from
that single convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateError, VerificationFailure
from .scenario import FlowScenario, liouville_density
from .symexpr import (
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
from .vectorcalc import (
    ExtendedField,
    VectorField,
    cross,
    curl,
    dot,
    grad,
    material_derivative,
    sum_exprs,
)

COORDS = ("t", "x", "y", "z")
TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))

__all__ = [
    "COORDS", "FourFormExt", "OneFormExt", "ThreeFormExt", "TwoFormExt", "build_omega",
    "check_closed", "closed_form_U", "d_function", "euler_psi", "exactness_form_residual",
    "exactness_residual", "exterior_derivative", "hamiltonian_field", "interior_product",
    "liouville_density", "pfaffian", "wedge_square",
]


@dataclass(frozen=True)
class OneFormExt:
    c: tuple[Expr, Expr, Expr, Expr]

    def __post_init__(self):
        if len(self.c) != 4:
            raise ValueError("a one-form on I x M has four components")
        object.__setattr__(self, "c", tuple(simplify(as_expr(e)) for e in self.c))

    def __getitem__(self, i: int) -> Expr:
        return self.c[i]

    def __sub__(self, other: OneFormExt) -> OneFormExt:
        return OneFormExt(tuple(simplify(a - b) for a, b in zip(self.c, other.c)))

    def __call__(self, V: ExtendedField) -> Expr:
        return simplify(sum_exprs(a * b for a, b in zip(self.c, V.components())))


@dataclass(frozen=True)
class TwoFormExt:
    m: tuple[tuple[Expr, ...], ...]

    def __post_init__(self):
        if len(self.m) != 4 or any(len(r) != 4 for r in self.m):
            raise ValueError("a two-form on I x M is a 4x4 matrix")
        rows = tuple(tuple(simplify(as_expr(e)) for e in r) for r in self.m)
        for i in range(4):
            if rows[i][i] != ZERO:
                raise ValueError("two-form matrix must have a zero diagonal")
            for j in range(i + 1, 4):
                if simplify(-rows[i][j]) != rows[j][i]:
                    raise ValueError(f"two-form matrix is not antisymmetric at ({i}, {j})")
        object.__setattr__(self, "m", rows)

    @classmethod
    def from_upper(cls, entries: dict[tuple[int, int], Expr]) -> TwoFormExt:
        m = [[ZERO] * 4 for _ in range(4)]
        for (i, j), e in entries.items():
            if i == j:
                raise ValueError("diagonal entries of a two-form vanish")
            e = simplify(as_expr(e))
            m[i][j] = e
            m[j][i] = simplify(-e)
        return cls(tuple(tuple(r) for r in m))

    def __getitem__(self, ij: tuple[int, int]) -> Expr:
        i, j = ij
        return self.m[i][j]

    def __sub__(self, other: TwoFormExt) -> TwoFormExt:
        return TwoFormExt(
            tuple(tuple(simplify(a - b) for a, b in zip(r, s)) for r, s in zip(self.m, other.m))
        )

    def entries(self) -> list[Expr]:
        return [self.m[i][j] for i in range(4) for j in range(i + 1, 4)]


@dataclass(frozen=True)
class ThreeFormExt:
    """Components on dx^a ^ dx^b ^ dx^c for the four increasing triples."""

    c: tuple[Expr, Expr, Expr, Expr]

    def component(self, triple: tuple[int, int, int]) -> Expr:
        return self.c[TRIPLES.index(triple)]


@dataclass(frozen=True)
class FourFormExt:
    """Coefficient of dt ^ dx ^ dy ^ dz."""

    coeff: Expr


def build_omega(v: VectorField, B: VectorField, phi) -> TwoFormExt:
    """-(grad phi + v x B) . dx ^ dt + B . (dx ^ dx)."""
    a = grad(phi) + cross(v, B)
    return TwoFormExt.from_upper(
        {
            (0, 1): a.x,
            (0, 2): a.y,
            (0, 3): a.z,
            (2, 3): B.x,  # dy ^ dz
            (3, 1): B.y,  # dz ^ dx
            (1, 2): B.z,  # dx ^ dy
        }
    )


def d_function(h) -> OneFormExt:
    h = as_expr(h)
    return OneFormExt(tuple(differentiate(h, v) for v in COORDS))


def d_one_form(theta: OneFormExt) -> TwoFormExt:
    entries = {}
    for i in range(4):
        for j in range(i + 1, 4):
            entries[(i, j)] = simplify(
                differentiate(theta[j], COORDS[i]) - differentiate(theta[i], COORDS[j])
            )
    return TwoFormExt.from_upper(entries)


def exterior_derivative(w: TwoFormExt) -> ThreeFormExt:
    d = differentiate
    comps = []
    for a, b, c in TRIPLES:
        comps.append(
            simplify(d(w[b, c], COORDS[a]) + d(w[c, a], COORDS[b]) + d(w[a, b], COORDS[c]))
        )
    return ThreeFormExt(tuple(comps))


def check_closed(w: TwoFormExt, cfg: IdentityConfig | None = None) -> Verdict:
    return all_zero(exterior_derivative(w).c, cfg)


def interior_product(V: ExtendedField, w: TwoFormExt) -> OneFormExt:
    """(i(V) w)_nu = V^mu w_{mu nu}."""
    comps = V.components()
    return OneFormExt(
        tuple(simplify(sum_exprs(comps[mu] * w[mu, nu] for mu in range(4))) for nu in range(4))
    )


def pfaffian(w: TwoFormExt) -> Expr:
    return simplify(w[0, 1] * w[2, 3] - w[0, 2] * w[1, 3] + w[0, 3] * w[1, 2])


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def wedge_square(w: TwoFormExt) -> FourFormExt:
    """w ^ w with w = (1/2) w_{mu nu} dx^mu ^ dx^nu, by the full permutation sum."""
    total = sum_exprs(
        _perm_sign(p) * (w[p[0], p[1]] * w[p[2], p[3]]) for p in itertools.permutations(range(4))
    )
    return FourFormExt(simplify(Fraction(1, 4) * total))


def _minor_det(m, rows, cols) -> Expr:
    (a, b, c), (p, q, r) = rows, cols
    return (
        m[a][p] * (m[b][q] * m[c][r] - m[b][r] * m[c][q])
        - m[a][q] * (m[b][p] * m[c][r] - m[b][r] * m[c][p])
        + m[a][r] * (m[b][p] * m[c][q] - m[b][q] * m[c][p])
    )


@lru_cache(maxsize=256)
def adjugate(w: TwoFormExt) -> tuple[tuple[Expr, ...], ...]:
    m = w.m
    adj = [[ZERO] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            rows = tuple(r for r in range(4) if r != j)
            cols = tuple(c for c in range(4) if c != i)
            cof = _minor_det(m, rows, cols)
            adj[i][j] = simplify(cof if (i + j) % 2 == 0 else -cof)
    return tuple(tuple(r) for r in adj)


def determinant(w: TwoFormExt) -> Expr:
    m = w.m
    return simplify(
        sum_exprs(
            ((-1) ** j) * (m[0][j] * _minor_det(m, (1, 2, 3), tuple(c for c in range(4) if c != j)))
            for j in range(4)
        )
    )


def hamiltonian_field(h, w: TwoFormExt, cfg: IdentityConfig | None = None) -> ExtendedField:
    """The unique V with i(V) w = dh, via the adjugate of w.

    With w antisymmetric, V^mu w_{mu nu} = (dh)_nu reads -w V = dh, so
    V = -adj(w) dh / det(w) and det(w) = Pf(w)^2.
    """
    h = as_expr(h)
    pf = pfaffian(w)
    if pf == ZERO or is_zero(pf, cfg).zero:
        raise DegenerateError("two-form is degenerate (Pfaffian vanishes identically)")
    det = simplify(pf * pf)
    dh = d_function(h)
    adj = adjugate(w)
    comps = [
        simplify(-sum_exprs(adj[mu][nu] * dh[nu] for nu in range(4)) / det) for mu in range(4)
    ]
    V = ExtendedField(comps[0], VectorField(*comps[1:]))
    residual = interior_product(V, w) - dh
    verdict = all_zero(residual.c, cfg)
    if not verdict.zero:
        raise VerificationFailure("i(V) w = dh after adjugate solve", verdict.witness)
    return V


def closed_form_U(h, s: FlowScenario, cfg: IdentityConfig | None = None) -> ExtendedField:
    """rho^-1 [ -B(h) (d/dt + v) + (dh/dt) B + grad phi x grad h ]."""
    h = as_expr(h)
    rho = liouville_density(s.B, s.phi)
    if rho == ZERO or is_zero(rho, cfg).zero:
        raise DegenerateError("Liouville density vanishes identically")
    inv = simplify(1 / rho)
    Bh = s.B.apply(h)
    hdot = material_derivative(h, s.v)
    gxh = cross(grad(s.phi), grad(h))
    xi = simplify(-inv * Bh)
    u = VectorField(
        *(simplify(inv * (-Bh * vi + hdot * bi + ci)) for vi, bi, ci in zip(s.v, s.B, gxh))
    )
    return ExtendedField(xi, u)


def exactness_residual(A: VectorField, psi, s: FlowScenario) -> tuple[VectorField, VectorField]:
    """(curl A - B, A_t - v x curl A - grad(phi + psi))."""
    psi = as_expr(psi)
    cA = curl(A)
    first = cA - s.B
    At = VectorField(*(differentiate(a, "t") for a in A))
    second = At - cross(s.v, cA) - grad(simplify(s.phi + psi))
    return first, second


def exactness_form_residual(A: VectorField, psi, s: FlowScenario) -> TwoFormExt:
    """-d(theta) - Omega for theta = -(psi dt + A . dx)."""
    psi = as_expr(psi)
    theta = OneFormExt((simplify(-psi), *(simplify(-a) for a in A)))
    neg_dtheta = d_one_form(OneFormExt(tuple(simplify(-c) for c in theta.c)))
    return neg_dtheta - build_omega(s.v, s.B, s.phi)


def euler_psi(phi, p_over_rho, v: VectorField) -> Expr:
    """Scalar potential -(phi + P/rho + |v|^2 / 2) of the Euler case."""
    return simplify(-(as_expr(phi) + as_expr(p_over_rho) + Fraction(1, 2) * dot(v, v)))
