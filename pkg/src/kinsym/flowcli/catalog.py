"""Built-in scenarios."""

from __future__ import annotations

from ..scenario import FlowScenario
from ..symexpr import parse_expr
from ..vectorcalc import VectorField


def _vec(*parts: str) -> VectorField:
    return VectorField(*(parse_expr(p) for p in parts))


def _shear() -> FlowScenario:
    return FlowScenario(
        name="SHEAR",
        v=_vec("z", "0", "0"),
        B=_vec("0", "1", "0"),
        phi=parse_expr("y"),
        h=parse_expr("y*(x - t*z)"),
        A=_vec("z", "0", "0"),
        psi=parse_expr("-y - z^2/2"),
        p_over_rho=parse_expr("0"),
        labels=tuple(parse_expr(e) for e in ("y", "x - t*z", "z")),
        expect="pass",
    )


def _rotation() -> FlowScenario:
    return FlowScenario(
        name="ROTATION",
        v=_vec("-y", "x", "0"),
        B=_vec("0", "0", "2"),
        phi=parse_expr("z"),
        h=parse_expr("(x^2 + y^2)*z"),
        A=_vec("-y", "x", "0"),
        p_over_rho=parse_expr("(x^2 + y^2)/2"),
        labels=tuple(
            parse_expr(e)
            for e in ("z", "x^2 + y^2", "x*cos(t) + y*sin(t)", "y*cos(t) - x*sin(t)")
        ),
        expect="pass",
    )


def _labels() -> FlowScenario:
    """Rigid rotation with a generator built from the co-rotating labels.

    Its hierarchy does not truncate before level 5, so the bracket tables
    are non-trivial.
    """
    rot = _rotation()
    return FlowScenario(
        name="LABELS",
        v=rot.v,
        B=rot.B,
        phi=rot.phi,
        h=parse_expr("z*(x*cos(t) + y*sin(t)) + (y*cos(t) - x*sin(t))^2"),
        A=rot.A,
        p_over_rho=rot.p_over_rho,
        labels=rot.labels,
        expect="pass",
    )


def _beltrami() -> FlowScenario:
    # Steady ABC flow with A = B = 1, C = 0: curl v = v, and phi is one of
    # its invariants, so B(phi) = v(phi) = 0.
    v = _vec("sin(z)", "sin(x) + cos(z)", "cos(x)")
    return FlowScenario(
        name="BELTRAMI-DEGENERATE",
        v=v,
        B=v,
        phi=parse_expr("sin(x) + cos(z)"),
        h=parse_expr("y"),
        expect="degenerate",
    )


def _nonfrozen() -> FlowScenario:
    return FlowScenario(
        name="NONFROZEN",
        v=_vec("z", "0", "0"),
        B=_vec("0", "x", "0"),
        phi=parse_expr("y"),
        h=parse_expr("y*(x - t*z)"),
        expect="violation",
    )


_BUILDERS = {
    "SHEAR": _shear,
    "ROTATION": _rotation,
    "LABELS": _labels,
    "BELTRAMI-DEGENERATE": _beltrami,
    "NONFROZEN": _nonfrozen,
}


def builtin_catalog() -> list[FlowScenario]:
    return [build() for build in _BUILDERS.values()]


def builtin(name: str) -> FlowScenario:
    try:
        return _BUILDERS[name.upper()]()
    except KeyError:
        raise KeyError(f"no builtin scenario named {name!r}") from None


def builtin_names() -> list[str]:
    return list(_BUILDERS)
