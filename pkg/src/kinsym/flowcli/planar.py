"""The planar Euler check on the lifted flow.

A stream function psi(t, x, y) gives v = (-psi_y, psi_x) with vorticity
w = lap(psi), so that v x (w e_z) = w grad(psi).  On (t, x, y) the
degenerate two-form

    Omega_2 = -(d phi_2 + w d psi) ^ dt + w dx ^ dy

has the single component d Omega_2 = w_t + {w, psi}, the residual of the
vorticity equation, with {f, g} = f_y g_x - f_x g_y.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError
from ..symexpr import Expr, IdentityConfig, Verdict, differentiate, is_zero, parse_expr, simplify
from .loader import parse_value, read_entries
from .report import CheckRecord, Report

PLANAR_KEYS = frozenset({"name", "psi", "phi2"})


@dataclass(frozen=True)
class Scenario2D:
    name: str
    psi: Expr
    phi2: Expr

    def __post_init__(self):
        for e in (self.psi, self.phi2):
            if "z" in e.free_vars:
                raise ValueError("planar scenarios may not depend on z")


def planar_bracket(f: Expr, g: Expr) -> Expr:
    d = differentiate
    return simplify(d(f, "y") * d(g, "x") - d(f, "x") * d(g, "y"))


def lifted_velocity(psi: Expr) -> tuple[Expr, Expr]:
    return simplify(-differentiate(psi, "y")), differentiate(psi, "x")


def vorticity(psi: Expr) -> Expr:
    d = differentiate
    return simplify(d(d(psi, "x"), "x") + d(d(psi, "y"), "y"))


def vorticity_residual(psi: Expr) -> Expr:
    w = vorticity(psi)
    return simplify(differentiate(w, "t") + planar_bracket(w, psi))


def planar_form(s: Scenario2D) -> dict[tuple[int, int], Expr]:
    """Upper-triangular entries of Omega_2 in the order (t, x, y)."""
    d = differentiate
    w = vorticity(s.psi)
    return {
        (0, 1): simplify(d(s.phi2, "x") + w * d(s.psi, "x")),
        (0, 2): simplify(d(s.phi2, "y") + w * d(s.psi, "y")),
        (1, 2): w,
    }


def planar_form_derivative(s: Scenario2D) -> Expr:
    m = planar_form(s)
    d = differentiate
    # (d Omega)_{txy} = d_t O_xy + d_x O_yt + d_y O_tx
    return simplify(d(m[(1, 2)], "t") - d(m[(0, 2)], "x") + d(m[(0, 1)], "y"))


def _planar_record(id: str, reference: str, verdict: Verdict, detail: str = "") -> CheckRecord:
    rec = CheckRecord.from_verdict(id, reference, verdict, detail)
    if rec.witness:
        rec.witness.pop("z", None)
    return rec


def check_2d(s: Scenario2D, cfg: IdentityConfig | None = None) -> Report:
    cfg = cfg or IdentityConfig()
    report = Report(s.name, {"seed": cfg.seed, "samples": cfg.samples, "abs_tol": cfg.abs_tol, "rel_tol": cfg.rel_tol})
    vx, vy = lifted_velocity(s.psi)
    advect = simplify(differentiate(s.phi2, "t") + vx * differentiate(s.phi2, "x") + vy * differentiate(s.phi2, "y"))
    report.add(_planar_record("2d.phi2_advected", "phi_2 is advected by the lifted flow", is_zero(advect, cfg)))
    ffw = is_zero(vorticity_residual(s.psi), cfg)
    closed = is_zero(planar_form_derivative(s), cfg)
    report.add(_planar_record("2d.vorticity", "w_t + {w, psi} = 0", ffw))
    report.add(_planar_record("2d.closed", "d Omega_2 = 0", closed))
    agree = Verdict(ffw.zero == closed.zero)
    report.add(_planar_record(
        "2d.equivalence", "closure holds exactly when the vorticity equation does", agree,
        detail=f"vorticity {'holds' if ffw.zero else 'fails'}, closure {'holds' if closed.zero else 'fails'}",
    ))
    return report


def _planar(name: str, psi: str, phi2: str) -> Scenario2D:
    return Scenario2D(name, parse_expr(psi), parse_expr(phi2))


PLANAR_CATALOG = {
    "TAYLOR-GREEN": _planar("TAYLOR-GREEN", "sin(x)*sin(y)", "sin(x)*sin(y)"),
    "FFW-VIOLATION": _planar("FFW-VIOLATION", "t*sin(x)", "x"),
}


def load_scenario_2d(text: str, default_name: str = "planar") -> Scenario2D:
    entries = read_entries(text, PLANAR_KEYS)
    for key in ("psi", "phi2"):
        if key not in entries:
            raise ParseError(f"missing key {key!r}", None)
    exprs = {k: parse_value(*entries[k]) for k in ("psi", "phi2")}
    name = entries["name"][0].strip() if "name" in entries else default_name
    try:
        return Scenario2D(name, exprs["psi"], exprs["phi2"])
    except ValueError as exc:
        raise ParseError(str(exc), None, line=entries["psi"][1]) from None
