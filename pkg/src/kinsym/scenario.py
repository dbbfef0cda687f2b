"""The flow scenario bundle and its hypothesis checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .symexpr import ZERO, Expr, IdentityConfig, Verdict, as_expr, is_zero, simplify
from .vectorcalc import (
    VectorField,
    div,
    dot,
    frozen_field_residual,
    grad,
    material_derivative,
    vector_is_zero,
)


@dataclass(frozen=True)
class FlowScenario:
    """Velocity v, frozen-in field B, Lagrangian invariant phi and generator h.

    ``labels`` optionally lists further known Lagrangian invariants of v;
    products of them are used as random conserved functions.
    """

    name: str
    v: VectorField
    B: VectorField
    phi: Expr
    h: Expr
    A: VectorField | None = None
    psi: Expr | None = None
    p_over_rho: Expr | None = None
    F: VectorField | None = None
    labels: tuple[Expr, ...] = field(default=())
    expect: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "phi", as_expr(self.phi))
        object.__setattr__(self, "h", as_expr(self.h))
        if self.psi is not None:
            object.__setattr__(self, "psi", as_expr(self.psi))
        if self.p_over_rho is not None:
            object.__setattr__(self, "p_over_rho", as_expr(self.p_over_rho))
        object.__setattr__(self, "labels", tuple(as_expr(e) for e in self.labels))

    @property
    def rho(self) -> Expr:
        """Liouville density -B . grad(phi)."""
        return liouville_density(self.B, self.phi)

    @property
    def force(self) -> VectorField | None:
        if self.F is not None:
            return self.F
        if self.p_over_rho is not None:
            return -grad(self.p_over_rho)
        return None


def liouville_density(B: VectorField, phi) -> Expr:
    return simplify(-dot(B, grad(phi)))


def momentum_residual(s: FlowScenario) -> VectorField | None:
    """v_t + (v . grad) v - F, when a force is known."""
    F = s.force
    if F is None:
        return None
    return VectorField(
        *(simplify(material_derivative(vi, s.v) - fi) for vi, fi in zip(s.v, F))
    )


def hypothesis_checks(s: FlowScenario, cfg: IdentityConfig | None = None) -> list[tuple[str, str, Verdict]]:
    """(id, description, verdict) for every stated hypothesis on the scenario."""
    out = [
        ("hyp.div_v", "velocity is divergence-free", is_zero(div(s.v), cfg)),
        ("hyp.div_B", "frozen-in field is divergence-free", is_zero(div(s.B), cfg)),
        ("hyp.frozen_B", "frozen-field equation for B", vector_is_zero(frozen_field_residual(s.B, s.v), cfg)),
        ("hyp.phi_conserved", "phi is a Lagrangian invariant", is_zero(material_derivative(s.phi, s.v), cfg)),
    ]
    mom = momentum_residual(s)
    if mom is not None:
        out.append(("hyp.momentum", "momentum equation v_t + v.grad v = F", vector_is_zero(mom, cfg)))
    return out


def density_is_degenerate(s: FlowScenario, cfg: IdentityConfig | None = None) -> bool:
    rho = s.rho
    return rho == ZERO or is_zero(rho, cfg).zero
