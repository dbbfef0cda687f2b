"""Running the full verification suite on one scenario."""

from __future__ import annotations

import itertools
import random
import time

from ..errors import DegenerateError, InvariantViolation, KinsymError
from ..hierarchy import (
    assemble_Uk,
    bracket_level,
    check_h_admissible,
    curvature,
    generate,
    relabelling_checks,
    split,
)
from ..poisson import BracketKind, bracket, involutivity_report, isomorphism_residual, jacobi_residual
from ..scenario import FlowScenario, density_is_degenerate, hypothesis_checks
from ..symexpr import (
    IdentityConfig,
    Verdict,
    all_zero,
    differentiate,
    is_zero,
    parse_expr,
    render,
    simplify,
)
from ..symexpr.random_exprs import random_polynomial
from ..symplectic import (
    build_omega,
    check_closed,
    closed_form_U,
    d_function,
    euler_psi,
    exactness_form_residual,
    exactness_residual,
    hamiltonian_field,
    interior_product,
    wedge_square,
)
from ..vectorcalc import ZERO_VECTOR, ExtendedField, extended_is_zero, vector_is_zero
from .report import CheckRecord, Report

RANDOM_SAMPLES = 5


class _Timer:
    def __init__(self, report: Report):
        self.report = report

    def record(self, id: str, reference: str, verdict: Verdict, start: float, detail: str = ""):
        rec = CheckRecord.from_verdict(id, reference, verdict, detail)
        rec.wall_time = time.perf_counter() - start
        return self.report.add(rec)


def _config_dict(depth: int, cfg: IdentityConfig, validate: bool) -> dict:
    return {
        "depth": depth,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "abs_tol": cfg.abs_tol,
        "rel_tol": cfg.rel_tol,
        "validate": validate,
    }


def conserved_functions(s: FlowScenario, rng: random.Random, count: int):
    """Random polynomials in the scenario's known invariants."""
    basis = list(s.labels) or [s.phi]
    return [random_polynomial(rng, basis, degree=2, terms=2) for _ in range(count)]


def run_report(
    s: FlowScenario,
    depth: int = 4,
    cfg: IdentityConfig | None = None,
    validate: bool = True,
) -> Report:
    """Run every check on ``s``; failures are recorded, never raised."""
    cfg = cfg or IdentityConfig()
    report = Report(s.name, _config_dict(depth, cfg, validate))
    timer = _Timer(report)
    rng = random.Random(cfg.seed)

    for id, description, verdict in hypothesis_checks(s, cfg):
        timer.record(id, description, verdict, time.perf_counter())

    start = time.perf_counter()
    if density_is_degenerate(s, cfg):
        report.add(CheckRecord(
            "density.nondegenerate", "Liouville density -B.grad(phi) is not identically zero",
            "degenerate", detail=f"rho = {render(s.rho)}",
            wall_time=time.perf_counter() - start,
        ))
        return report

    try:
        _symplectic_checks(s, cfg, report, timer)
        levels = _hierarchy_checks(s, depth, cfg, report, timer)
        _connection_checks(s, levels, cfg, report, timer, rng)
        _bracket_checks(s, levels, cfg, report, timer, rng)
    except DegenerateError as exc:
        report.add(CheckRecord("degenerate", "non-degenerate input", "degenerate", detail=str(exc)))
    return report


def _symplectic_checks(s, cfg, report, timer) -> None:
    start = time.perf_counter()
    omega = build_omega(s.v, s.B, s.phi)
    timer.record("omega.closed", "closure of the symplectic two-form", check_closed(omega, cfg), start)

    start = time.perf_counter()
    D = ExtendedField.suspension(s.v)
    residual = interior_product(D, omega) - d_function(s.phi)
    timer.record(
        "omega.suspension_hamiltonian", "i(d/dt + v) Omega = d phi", all_zero(residual.c, cfg), start
    )

    start = time.perf_counter()
    ratio = simplify(wedge_square(omega).coeff / s.rho)
    verdict = all_zero([differentiate(ratio, v) for v in ("t", "x", "y", "z")], cfg)
    report.convention_constant = render(ratio)
    if verdict.zero and is_zero(ratio, cfg).zero:
        verdict = Verdict(False, None, 0.0)
    timer.record(
        "omega.liouville", "Omega ^ Omega is a constant nonzero multiple of the density",
        verdict, start, detail=f"ratio {render(ratio)}",
    )

    if s.A is not None:
        psi = s.psi
        if psi is None and s.p_over_rho is not None:
            psi = euler_psi(s.phi, s.p_over_rho, s.v)
        if psi is not None:
            start = time.perf_counter()
            first, second = exactness_residual(s.A, psi, s)
            timer.record("exact.curl", "curl A = B", vector_is_zero(first, cfg), start)
            start = time.perf_counter()
            timer.record(
                "exact.potential", "A_t - v x curl A = grad(phi + psi)", vector_is_zero(second, cfg), start
            )
            start = time.perf_counter()
            form = exactness_form_residual(s.A, psi, s)
            timer.record(
                "exact.form", "-d theta = Omega for theta = -(psi dt + A.dx)",
                all_zero(form.entries(), cfg), start,
            )

    funcs = [("h", s.h), ("phi", s.phi), ("t", parse_expr("t"))]
    funcs += [(f"label{i}", f) for i, f in enumerate(s.labels)]
    for tag, f in funcs:
        start = time.perf_counter()
        try:
            V = hamiltonian_field(f, omega, cfg)
            W = closed_form_U(f, s, cfg)
            verdict = extended_is_zero(V - W, cfg)
        except InvariantViolation as exc:
            verdict = Verdict(False, exc.witness)
        timer.record(
            f"hamilton.crosscheck.{tag}", "adjugate solve agrees with the closed-form Hamiltonian field",
            verdict, start,
        )


def _hierarchy_checks(s, depth, cfg, report, timer):
    start = time.perf_counter()
    adm = check_h_admissible(s.h, s, cfg)
    timer.record("hier.admissible", "dh/dt = 0", adm.strict, start, detail=f"dh/dt = {render(adm.hdot)}")
    if not adm.strict.zero:
        report.add(CheckRecord(
            "hier.weakly_admissible", "dh/dt is a conserved function of phi",
            "info", detail=f"rate conserved: {adm.rate_conserved.zero}, "
                           f"function of phi: {adm.rate_depends_on_phi.zero}",
        ))

    start = time.perf_counter()
    try:
        levels = generate(s, depth=depth, cfg=cfg, validate=False)
    except InvariantViolation as exc:
        timer.record("hier.generate", "hierarchy generation", Verdict(False, exc.witness), start)
        return []
    elapsed = time.perf_counter() - start
    for lvl in levels:
        for check_id, name, verdict in lvl.checks:
            rec = CheckRecord.from_verdict(f"hier.level{lvl.k}.{check_id}", name, verdict)
            rec.wall_time = elapsed / max(len(levels), 1)
            report.add(rec)
    truncated = [lvl.k for lvl in levels if lvl.truncated]
    detail = f"truncates at k={truncated[0]}" if truncated else f"no truncation up to k={depth}"
    report.add(CheckRecord("hier.truncation", "levels with h_k identically zero", "info", detail=detail))
    return levels if adm.strict.zero else []


def _connection_checks(s, levels, cfg, report, timer, rng) -> None:
    for lvl in levels:
        if lvl.truncated:
            continue
        start = time.perf_counter()
        try:
            U = assemble_Uk(s, levels, lvl.k, cfg)
            parts = split(U, s.v, cfg)
            verdict = extended_is_zero(parts.reassemble() - U, cfg)
        except InvariantViolation as exc:
            verdict = Verdict(False, exc.witness)
        timer.record(
            f"connection.split.{lvl.k}", "U_k is a symmetry and splits into commuting parts", verdict, start
        )

    for rec in relabelling_checks(levels, s, cfg):
        rep = CheckRecord.from_verdict(rec.id, rec.description, rec.verdict)
        report.add(rep)

    start = time.perf_counter()
    verdict = Verdict(True)
    for _ in range(20):
        xi_u = random_polynomial(rng, degree=2, terms=3)
        xi_w = random_polynomial(rng, degree=2, terms=3)
        R = curvature(ExtendedField(xi_u, ZERO_VECTOR), ExtendedField(xi_w, ZERO_VECTOR), s.v)
        verdict = extended_is_zero(R, cfg)
        if not verdict.zero:
            break
    timer.record("connection.flat", "curvature of the connection vanishes (20 random pairs)", verdict, start)


def _bracket_checks(s, levels, cfg, report, timer, rng) -> None:
    for kind in BracketKind:
        start = time.perf_counter()
        verdict = Verdict(True)
        for _ in range(RANDOM_SAMPLES):
            f, g, h = (random_polynomial(rng, degree=2, terms=2) for _ in range(3))
            verdict = is_zero(jacobi_residual(kind, f, g, h, s, cfg), cfg)
            if not verdict.zero:
                break
        timer.record(f"bracket.jacobi.{kind.value}", f"Jacobi identity of the {kind.value} bracket", verdict, start)

    start = time.perf_counter()
    verdict = Verdict(True)
    for _ in range(RANDOM_SAMPLES):
        f, g = (random_polynomial(rng, degree=2, terms=2) for _ in range(2))
        total = bracket(BracketKind.OMEGA, f, g, s, cfg)
        parts = bracket(BracketKind.PHI, f, g, s, cfg) + bracket(BracketKind.GAUGE, f, g, s, cfg)
        verdict = is_zero(simplify(total - parts), cfg)
        if not verdict.zero:
            break
    timer.record("bracket.decomposition", "Omega bracket = Phi bracket + Gauge bracket", verdict, start)

    pairs = list(zip(conserved_functions(s, rng, RANDOM_SAMPLES), conserved_functions(s, rng, RANDOM_SAMPLES)))
    live = [lvl for lvl in levels if lvl.k >= 1 and not lvl.truncated]
    pairs += [(a.h, b.h) for a, b in itertools.combinations(live, 2)]
    start = time.perf_counter()
    verdict = Verdict(True)
    for f, g in pairs:
        try:
            verdict = extended_is_zero(isomorphism_residual(f, g, s, cfg), cfg)
        except InvariantViolation as exc:
            verdict = Verdict(False, exc.witness)
        if not verdict.zero:
            break
    timer.record(
        "bracket.isomorphism", "[U_f, U_g] = U_{f,g} for conserved f, g", verdict, start,
        detail=f"{len(pairs)} pairs",
    )

    for a, b in itertools.combinations(live, 2):
        start = time.perf_counter()
        try:
            _, hkl = bracket_level(a, b, s, cfg)
            verdict = is_zero(simplify(hkl - bracket(BracketKind.PHI, a.h, b.h, s, cfg)), cfg)
        except InvariantViolation as exc:
            verdict = Verdict(False, exc.witness)
        timer.record(
            f"bracket.levels.{a.k}.{b.k}", "[W_k, W_l] is generated by {h_k, h_l}_Phi", verdict, start
        )

    start = time.perf_counter()
    table = involutivity_report(levels, s, cfg)
    bad = next((p for p in table if not p.verdict.zero), None)
    verdict = bad.verdict if bad else Verdict(True)
    timer.record(
        "bracket.involutive", "gauge brackets of the hierarchy functions vanish", verdict, start,
        detail=f"{len(table)} pairs" + (f", first failure ({bad.k}, {bad.l})" if bad else ""),
    )
