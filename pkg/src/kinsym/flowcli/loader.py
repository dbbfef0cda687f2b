"""Line-oriented scenario files: ``key = expression``, ``#`` starts a comment."""

from __future__ import annotations

from ..errors import HypothesisViolation, ParseError, UnknownIdentifierError
from ..scenario import FlowScenario, hypothesis_checks
from ..symexpr import Expr, IdentityConfig, parse_expr
from ..vectorcalc import VectorField

VECTOR_KEYS = ("v", "B", "A", "F")
SCALAR_KEYS = ("phi", "h", "psi", "p_over_rho")
TEXT_KEYS = ("name", "expect")
LIST_KEYS = ("labels",)
REQUIRED = ("v_x", "v_y", "v_z", "B_x", "B_y", "B_z", "phi", "h")

FLOW_KEYS = frozenset(
    [f"{v}_{c}" for v in VECTOR_KEYS for c in "xyz"] + list(SCALAR_KEYS) + list(TEXT_KEYS) + list(LIST_KEYS)
)


def parse_value(text: str, line: int, col: int) -> Expr:
    try:
        return parse_expr(text)
    except UnknownIdentifierError as exc:
        raise UnknownIdentifierError(exc.name, col + exc.offset, line=line) from None
    except ParseError as exc:
        raise ParseError(exc.message, col + exc.offset, exc.expected, line=line) from None


def read_entries(text: str, allowed: frozenset[str]) -> dict[str, tuple[str, int, int]]:
    """Map key -> (raw value, line number, column of the value)."""
    out: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'key = expression'", len(body) - len(body.lstrip()), {"'='"}, line=lineno)
        key_part, value = body.split("=", 1)
        key = key_part.strip()
        if key not in allowed:
            raise ParseError(f"unknown key {key!r}", len(key_part) - len(key_part.lstrip()), line=lineno)
        if key in out:
            raise ParseError(f"duplicate key {key!r}", len(key_part) - len(key_part.lstrip()), line=lineno)
        out[key] = (value, lineno, len(key_part) + 1)
    return out


def load_scenario(
    text: str, validate: bool = True, cfg: IdentityConfig | None = None, default_name: str = "scenario"
) -> FlowScenario:
    """Parse a scenario file; with ``validate`` the flow hypotheses must hold."""
    entries = read_entries(text, FLOW_KEYS)
    # Expressions are parsed before completeness is checked so that syntax
    # errors are reported at their location.
    exprs: dict[str, Expr] = {}
    labels: list[Expr] = []
    for key, (value, line, col) in entries.items():
        if key in TEXT_KEYS:
            continue
        if key == "labels":
            for piece in value.split(","):
                if piece.strip():
                    labels.append(parse_value(piece, line, col))
                col += len(piece) + 1
        else:
            exprs[key] = parse_value(value, line, col)

    missing = [k for k in REQUIRED if k not in entries]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}", None)

    vectors: dict[str, VectorField | None] = {}
    for name in VECTOR_KEYS:
        parts = [exprs.get(f"{name}_{c}") for c in "xyz"]
        if all(p is None for p in parts):
            vectors[name] = None
        elif any(p is None for p in parts):
            line = next(entries[f"{name}_{c}"][1] for c, p in zip("xyz", parts) if p is not None)
            raise ParseError(f"vector {name} needs all of {name}_x, {name}_y, {name}_z", None, line=line)
        else:
            vectors[name] = VectorField(*parts)

    s = FlowScenario(
        name=entries["name"][0].strip() if "name" in entries else default_name,
        v=vectors["v"],
        B=vectors["B"],
        phi=exprs["phi"],
        h=exprs["h"],
        A=vectors["A"],
        psi=exprs.get("psi"),
        p_over_rho=exprs.get("p_over_rho"),
        F=vectors["F"],
        labels=tuple(labels),
        expect=entries["expect"][0].strip() if "expect" in entries else None,
    )
    if validate:
        validate_scenario(s, cfg)
    return s


def validate_scenario(s: FlowScenario, cfg: IdentityConfig | None = None) -> None:
    for _, description, verdict in hypothesis_checks(s, cfg):
        if not verdict.zero:
            raise HypothesisViolation(description, verdict.witness)
