"""The hierarchy of relabelling symmetries generated by a conserved function.

Starting from U_0 = rho^-1 B (the Hamiltonian field of ``t``) and
W_1 = rho^-1 grad(phi) x grad(h), the levels are

    h_2 = -U_0(h),   h_k = W_1(h_{k-1})          (k >= 3)
    W_2 = [W_1, U_0], W_k = [W_1, W_{k-1}]       (k >= 3)
    xi_k = -U_0(h_k)

and every W_k is itself generated by its function: W_k = X_{h_k} with
X_f = rho^-1 grad(phi) x grad(f).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateError, InadmissibleError, InvariantViolation
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
    parse_expr,
    simplify,
)
from .symplectic import build_omega, hamiltonian_field
from .vectorcalc import (
    ExtendedField,
    VectorField,
    cross,
    dot,
    ext_bracket,
    extended_is_zero,
    grad,
    lie_bracket3,
    material_derivative,
    symmetry_residual,
    vector_is_zero,
    weighted_div,
)

T_FUNCTION = parse_expr("t")


@dataclass(frozen=True)
class HierarchyLevel:
    k: int
    h: Expr
    W: VectorField
    xi: Expr
    truncated: bool = False
    U: ExtendedField | None = None
    # (check id, relation, verdict) for every invariant verified at this level
    checks: tuple[tuple[str, str, Verdict], ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class ConnectionSplit:
    horizontal: ExtendedField
    vertical: VectorField

    def reassemble(self) -> ExtendedField:
        return self.horizontal + ExtendedField.spatial(self.vertical)


@dataclass(frozen=True)
class Admissibility:
    """dh/dt and the conditions it may satisfy.

    ``strict``: dh/dt vanishes.  ``rate_conserved``: dh/dt is itself a
    Lagrangian invariant.  ``rate_depends_on_phi``: every 2x2 minor of the
    space-time gradients of dh/dt and phi vanishes, i.e. dh/dt is locally a
    function of phi.
    """

    hdot: Expr
    strict: Verdict
    rate_conserved: Verdict
    rate_depends_on_phi: Verdict

    @property
    def weak(self) -> bool:
        return self.rate_conserved.zero and self.rate_depends_on_phi.zero


@dataclass(frozen=True)
class CheckResult:
    id: str
    description: str
    verdict: Verdict
    k: int | None = None


def _inverse_density(s: FlowScenario, cfg: IdentityConfig | None) -> Expr:
    rho = liouville_density(s.B, s.phi)
    if rho == ZERO or is_zero(rho, cfg).zero:
        raise DegenerateError(f"Liouville density of scenario {s.name!r} vanishes identically")
    return simplify(1 / rho)


def u0(s: FlowScenario, cfg: IdentityConfig | None = None) -> VectorField:
    """rho^-1 B."""
    return s.B.scale(_inverse_density(s, cfg))


def phi_field(f, s: FlowScenario, cfg: IdentityConfig | None = None) -> VectorField:
    """X_f = rho^-1 grad(phi) x grad(f), the field generated by f on each phi-level."""
    return cross(grad(s.phi), grad(f)).scale(_inverse_density(s, cfg))


def w1(h, s: FlowScenario, cfg: IdentityConfig | None = None) -> VectorField:
    return phi_field(as_expr(h), s, cfg)


def _four_gradient(f: Expr) -> list[Expr]:
    return [differentiate(f, v) for v in ("t", "x", "y", "z")]


def check_h_admissible(h, s: FlowScenario, cfg: IdentityConfig | None = None) -> Admissibility:
    h = as_expr(h)
    hdot = material_derivative(h, s.v)
    strict = is_zero(hdot, cfg)
    rate_conserved = is_zero(material_derivative(hdot, s.v), cfg)
    a, b = _four_gradient(hdot), _four_gradient(s.phi)
    minors = [simplify(a[i] * b[j] - a[j] * b[i]) for i in range(4) for j in range(i + 1, 4)]
    return Admissibility(hdot, strict, rate_conserved, all_zero(minors, cfg))


def _check(checks: list, id: str, name: str, verdict: Verdict, validate: bool, k: int) -> None:
    checks.append((id, name, verdict))
    if validate and not verdict.zero:
        raise InvariantViolation(f"{name} at level {k}", verdict.witness)


def generate(
    s: FlowScenario,
    h=None,
    depth: int = 4,
    cfg: IdentityConfig | None = None,
    validate: bool = True,
) -> list[HierarchyLevel]:
    """Levels 0..depth of the hierarchy generated by ``h`` (default: the scenario's h).

    With ``validate`` the generator must be strictly conserved and every
    level invariant must hold, otherwise :class:`InadmissibleError` or
    :class:`InvariantViolation` is raised.  Without it the verdicts are only
    recorded on each level.
    """
    if depth < 2:
        raise ValueError("hierarchy depth must be at least 2")
    h = s.h if h is None else as_expr(h)
    inv = _inverse_density(s, cfg)
    if validate:
        adm = check_h_admissible(h, s, cfg)
        if not adm.strict.zero:
            raise InadmissibleError(f"dh/dt = {adm.hdot} does not vanish (witness {adm.strict.witness})")

    omega = build_omega(s.v, s.B, s.phi)
    D = ExtendedField.suspension(s.v)
    U0 = s.B.scale(inv)

    checks0: list = []
    _check(checks0, "u0_phi", "U_0(phi) = -1", is_zero(simplify(U0.apply(s.phi) + 1), cfg), validate, 0)
    _check(
        checks0,
        "commutes",
        "[d/dt + v, U_0] = 0",
        extended_is_zero(ext_bracket(D, ExtendedField.spatial(U0)), cfg),
        validate,
        0,
    )
    levels = [HierarchyLevel(0, T_FUNCTION, U0, ZERO, checks=tuple(checks0))]

    W1 = w1(h, s, cfg)
    levels.append(_finish_level(1, h, W1, s, omega, D, cfg, validate, check_vert=False))

    h_prev, W_prev = h, U0
    for k in range(2, depth + 1):
        hk = simplify(-U0.apply(h)) if k == 2 else W1.apply(h_prev)
        Wk = lie_bracket3(W1, W_prev)
        levels.append(_finish_level(k, hk, Wk, s, omega, D, cfg, validate, check_vert=True))
        h_prev, W_prev = hk, Wk
    return levels


def _finish_level(k, hk, Wk, s, omega, D, cfg, validate, check_vert) -> HierarchyLevel:
    U0 = u0(s, cfg)
    checks: list = []
    if check_vert:
        _check(checks, "generated", "W_k = X_{h_k}", vector_is_zero(Wk - phi_field(hk, s, cfg), cfg), validate, k)
    xi = simplify(-U0.apply(hk))
    xi_ham = hamiltonian_field(hk, omega, cfg).xi
    _check(checks, "xi", "xi_k = -U_0(h_k)", is_zero(simplify(xi - xi_ham), cfg), validate, k)
    _check(
        checks,
        "commutes",
        "[d/dt + v, W_k] = 0",
        extended_is_zero(ext_bracket(D, ExtendedField.spatial(Wk)), cfg),
        validate,
        k,
    )
    truncated = hk == ZERO or is_zero(hk, cfg).zero
    return HierarchyLevel(k, hk, Wk, xi, truncated, checks=tuple(checks))


def bracket_level(
    a: HierarchyLevel, b: HierarchyLevel, s: FlowScenario, cfg: IdentityConfig | None = None
) -> tuple[VectorField, Expr]:
    """([W_k, W_l], h_kl) with h_kl = rho^-1 grad(phi) . (grad h_k x grad h_l).

    The returned function generates the bracket: [W_k, W_l] = X_{h_kl}.
    Level 0 is not of the form X_{h_0} and is rejected.
    """
    if a.k == 0 or b.k == 0:
        raise ValueError("level 0 (U_0) is not generated by its function; use levels k >= 1")
    if a.truncated or b.truncated:
        raise ValueError("bracket_level requires non-truncated levels")
    inv = _inverse_density(s, cfg)
    W = lie_bracket3(a.W, b.W)
    hkl = simplify(inv * dot(grad(s.phi), cross(grad(a.h), grad(b.h))))
    verdict = vector_is_zero(W - phi_field(hkl, s, cfg), cfg)
    if not verdict.zero:
        raise InvariantViolation(f"[W_{a.k}, W_{b.k}] = X_(h_{a.k}{b.k})", verdict.witness)
    return W, hkl


def assemble_Uk(
    s: FlowScenario, levels: list[HierarchyLevel], k: int, cfg: IdentityConfig | None = None
) -> ExtendedField:
    """U_k = xi_k (d/dt + v) + W_k, checked to be a symmetry of the suspension."""
    lvl = levels[k]
    if lvl.truncated and lvl.k > 0:
        return ExtendedField(ZERO, VectorField(ZERO, ZERO, ZERO))
    D = ExtendedField.suspension(s.v)
    U = D.scale(lvl.xi) + ExtendedField.spatial(lvl.W)
    verdict = is_zero(material_derivative(lvl.xi, s.v), cfg)
    if not verdict.zero:
        raise InvariantViolation(f"d(xi_{k})/dt = 0", verdict.witness)
    verdict = extended_is_zero(symmetry_residual(U, s.v), cfg)
    if not verdict.zero:
        raise InvariantViolation(f"U_{k} is a symmetry of d/dt + v", verdict.witness)
    return U


def split(U: ExtendedField, v: VectorField, cfg: IdentityConfig | None = None) -> ConnectionSplit:
    """Horizontal part xi (d/dt + v) and vertical part u - xi v.

    When ``cfg`` is given and U is a symmetry of the suspension, the
    vertical part is also checked to commute with d/dt + v.
    """
    D = ExtendedField.suspension(v)
    out = ConnectionSplit(D.scale(U.xi), U.u - v.scale(U.xi))
    if cfg is not None and extended_is_zero(symmetry_residual(U, v), cfg).zero:
        verdict = extended_is_zero(ext_bracket(D, ExtendedField.spatial(out.vertical)), cfg)
        if not verdict.zero:
            raise InvariantViolation("[d/dt + v, U^v] = 0", verdict.witness)
    return out


def vertical_part(X: ExtendedField, v: VectorField) -> ExtendedField:
    return ExtendedField(ZERO, X.u - v.scale(X.xi))


def curvature(U: ExtendedField, W: ExtendedField, v: VectorField) -> ExtendedField:
    """Vertical part of [Gamma(U), Gamma(W)], Gamma(X) = xi_X (d/dt + v)."""
    D = ExtendedField.suspension(v)
    return vertical_part(ext_bracket(D.scale(U.xi), D.scale(W.xi)), v)


def relabelling_checks(
    levels: list[HierarchyLevel], s: FlowScenario, cfg: IdentityConfig | None = None
) -> list[CheckResult]:
    """Volume preservation, commutation with the suspension and conservation, per level.

    Conservation is not asked of level 0, whose function is ``t``.
    """
    rho = liouville_density(s.B, s.phi)
    D = ExtendedField.suspension(s.v)
    out: list[CheckResult] = []
    for lvl in levels:
        if lvl.truncated:
            continue
        out.append(CheckResult(
            f"relabel.div.{lvl.k}", "weighted divergence of W_k vanishes",
            is_zero(weighted_div(lvl.W, rho, cfg), cfg), lvl.k,
        ))
        out.append(CheckResult(
            f"relabel.commute.{lvl.k}", "[d/dt + v, W_k] = 0",
            extended_is_zero(ext_bracket(D, ExtendedField.spatial(lvl.W)), cfg), lvl.k,
        ))
        if lvl.k > 0:
            out.append(CheckResult(
                f"relabel.conserved.{lvl.k}", "h_k is a Lagrangian invariant",
                is_zero(material_derivative(lvl.h, s.v), cfg), lvl.k,
            ))
    return out
