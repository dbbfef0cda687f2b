"""Poisson brackets on I x M: the full bracket and its two parts.

With d/dt the material derivative along v and U_0 = rho^-1 B,

    {f, g}_Phi   = rho^-1 grad(phi) . (grad f x grad g)
    {f, g}_Gauge = U_0(f) dg/dt - U_0(g) df/dt
    {f, g}_Omega = {f, g}_Phi + {f, g}_Gauge
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import DegenerateError
from .hierarchy import HierarchyLevel, u0
from .scenario import FlowScenario, liouville_density
from .symexpr import ZERO, Expr, IdentityConfig, Verdict, as_expr, is_zero, simplify
from .symplectic import build_omega, hamiltonian_field
from .vectorcalc import ExtendedField, cross, dot, ext_bracket, grad, material_derivative


class BracketKind(enum.Enum):
    OMEGA = "Omega"
    PHI = "Phi"
    GAUGE = "Gauge"


def _phi_bracket(f: Expr, g: Expr, s: FlowScenario) -> Expr:
    rho = liouville_density(s.B, s.phi)
    return simplify(dot(grad(s.phi), cross(grad(f), grad(g))) / rho)


def _gauge_bracket(f: Expr, g: Expr, s: FlowScenario) -> Expr:
    U0 = u0(s)
    return simplify(
        U0.apply(f) * material_derivative(g, s.v) - U0.apply(g) * material_derivative(f, s.v)
    )


def bracket(kind: BracketKind, f, g, s: FlowScenario, cfg: IdentityConfig | None = None) -> Expr:
    f, g = as_expr(f), as_expr(g)
    rho = liouville_density(s.B, s.phi)
    if rho == ZERO or is_zero(rho, cfg).zero:
        raise DegenerateError(f"Liouville density of scenario {s.name!r} vanishes identically")
    if kind is BracketKind.PHI:
        return _phi_bracket(f, g, s)
    if kind is BracketKind.GAUGE:
        return _gauge_bracket(f, g, s)
    return simplify(_phi_bracket(f, g, s) + _gauge_bracket(f, g, s))


def jacobi_residual(kind: BracketKind, f, g, h, s: FlowScenario, cfg=None) -> Expr:
    def b(a, c):
        return bracket(kind, a, c, s, cfg)

    return simplify(b(b(f, g), h) + b(b(g, h), f) + b(b(h, f), g))


def isomorphism_residual(f, g, s: FlowScenario, cfg: IdentityConfig | None = None) -> ExtendedField:
    """[U_f, U_g] - U_{f,g} with U_* the Hamiltonian fields of the symplectic form."""
    omega = build_omega(s.v, s.B, s.phi)
    Uf = hamiltonian_field(f, omega, cfg)
    Ug = hamiltonian_field(g, omega, cfg)
    Ufg = hamiltonian_field(bracket(BracketKind.OMEGA, f, g, s, cfg), omega, cfg)
    return ext_bracket(Uf, Ug) - Ufg


@dataclass(frozen=True)
class PairVerdict:
    k: int
    l: int
    value: Expr
    verdict: Verdict


def involutivity_report(
    levels: list[HierarchyLevel], s: FlowScenario, cfg: IdentityConfig | None = None, extra=()
) -> list[PairVerdict]:
    """{h_k, h_l}_Gauge for all pairs of levels k, l >= 1.

    Level 0 carries the function ``t``, whose gauge bracket with h_k is
    xi_k rather than zero, so it is not part of the involutive set.
    ``extra`` appends further functions (indexed -1, -2, ...) to probe
    whether they belong to it.
    """
    funcs = [(lvl.k, lvl.h) for lvl in levels if lvl.k >= 1]
    funcs += [(-(i + 1), as_expr(f)) for i, f in enumerate(extra)]
    out = []
    for (k, hk), (l, hl) in itertools.product(funcs, repeat=2):
        value = bracket(BracketKind.GAUGE, hk, hl, s, cfg)
        out.append(PairVerdict(k, l, value, is_zero(value, cfg)))
    return out
