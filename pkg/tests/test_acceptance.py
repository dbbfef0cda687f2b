"""Acceptance suite.

Every test carries a ``criterion(n)`` marker; the terminal summary prints
one PASS/FAIL line per criterion (see conftest.py).  Runtime bounds are
asserted inside the tests that state them.
"""

from __future__ import annotations

import io
import json
import random
import subprocess
import sys
import time

import pytest

from kinsym.errors import DegenerateError, EvaluationError
from kinsym.flowcli import PLANAR_CATALOG, builtin, builtin_catalog, check_2d
from kinsym.flowcli.cli import main
from kinsym.flowcli.runner import conserved_functions
from kinsym.hierarchy import curvature, generate, split
from kinsym.poisson import (
    BracketKind,
    bracket,
    involutivity_report,
    isomorphism_residual,
    jacobi_residual,
)
from kinsym.scenario import liouville_density
from kinsym.symexpr import (
    ZERO,
    IdentityConfig,
    central_difference,
    differentiate,
    eval_at,
    is_zero,
    parse_expr,
    render,
    simplify,
)
from kinsym.symexpr.random_exprs import random_expr, random_polynomial
from kinsym.symplectic import (
    build_omega,
    check_closed,
    closed_form_U,
    d_function,
    euler_psi,
    exactness_residual,
    hamiltonian_field,
    interior_product,
    wedge_square,
)
from kinsym.vectorcalc import (
    ExtendedField,
    VectorField,
    div,
    ext_bracket,
    extended_is_zero,
    frozen_field_residual,
    vector_is_zero,
    weighted_div,
)

P = parse_expr
CFG = IdentityConfig(samples=20, abs_tol=1e-9, rel_tol=1e-9, seed=1)
FLOWS = ("SHEAR", "ROTATION", "LABELS")
KINDS = list(BracketKind)


def rand_poly(rng, basis=None, degree=2, terms=3):
    return random_polynomial(rng, basis, degree=degree, terms=terms)


# 1 ------------------------------------------------------------------------


@pytest.mark.criterion(1)
@pytest.mark.parametrize("name", ["SHEAR", "ROTATION"])
def test_flow_hypotheses(name):
    start = time.perf_counter()
    s = builtin(name)
    assert vector_is_zero(frozen_field_residual(s.B, s.v), CFG).zero
    assert is_zero(div(s.v), CFG).zero
    assert is_zero(div(s.B), CFG).zero
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"{name}: {elapsed:.3f} s"


# 2 ------------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_symplectic_form():
    start = time.perf_counter()
    for name in FLOWS:
        s = builtin(name)
        omega = build_omega(s.v, s.B, s.phi)
        assert check_closed(omega, CFG).zero, name

        D = ExtendedField.suspension(s.v)
        residual = interior_product(D, omega) - d_function(s.phi)
        for comp in residual.c:
            assert is_zero(comp, CFG).zero, name

        ratio = simplify(wedge_square(omega).coeff / liouville_density(s.B, s.phi))
        for var in ("t", "x", "y", "z"):
            assert is_zero(differentiate(ratio, var), CFG).zero, name
        value = eval_at(ratio, (0.3, -0.7, 1.1, 0.4))
        assert value != 0 and value == pytest.approx(-2.0)

    rot = builtin("ROTATION")
    psi = rot.psi if rot.psi is not None else euler_psi(rot.phi, rot.p_over_rho, rot.v)
    first, second = exactness_residual(rot.A, psi, rot)
    assert vector_is_zero(first, CFG).zero
    assert vector_is_zero(second, CFG).zero
    elapsed = time.perf_counter() - start
    assert elapsed < 2.0, f"{elapsed:.3f} s"


# 3 ------------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_shear_hierarchy():
    start = time.perf_counter()
    s = builtin("SHEAR")
    levels = generate(s, h=P("y*(x - t*z)"), depth=4, cfg=CFG)

    assert levels[2].h == simplify(P("x - t*z"))
    assert levels[2].W == VectorField(P("t"), ZERO, P("1"))
    assert levels[3].h == ZERO and levels[3].truncated
    assert not levels[2].truncated
    assert all(lvl.truncated for lvl in levels[3:])

    expected = {0: {"u0_phi", "commutes"}, 1: {"xi", "commutes"}}
    for lvl in levels:
        ids = {cid for cid, _, _ in lvl.checks}
        assert expected.get(lvl.k, {"generated", "xi", "commutes"}) == ids
        for cid, relation, verdict in lvl.checks:
            assert verdict.zero, f"level {lvl.k}: {relation}"
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"{elapsed:.3f} s"


# 4 ------------------------------------------------------------------------


def _vertical_divergences(s, h):
    """Weighted divergences of every vertical field attached to ``h``.

    These are the W_k of the hierarchy generated without validation and
    the vertical part of the Hamiltonian field of ``h`` itself.
    """
    rho = liouville_density(s.B, s.phi)
    omega = build_omega(s.v, s.B, s.phi)
    out = []
    for lvl in generate(s, h=h, depth=4, cfg=CFG, validate=False):
        out.append((f"W_{lvl.k}", is_zero(weighted_div(lvl.W, rho, CFG), CFG)))
    U = hamiltonian_field(h, omega, CFG)
    out.append(("U_h vertical", is_zero(weighted_div(split(U, s.v).vertical, rho, CFG), CFG)))
    return out


@pytest.mark.criterion(4)
@pytest.mark.parametrize("name", FLOWS)
def test_admissible_vertical_fields_preserve_volume(name):
    s = builtin(name)
    for label, verdict in _vertical_divergences(s, s.h):
        assert verdict.zero, f"{name}: {label}"


@pytest.mark.criterion(4)
def test_inadmissible_generator_is_detected():
    # h = x on SHEAR: dh/dt = z but B(dh/dt) = 0, so every vertical field
    # built from h is still volume preserving and no witness exists.  The
    # criterion is kept as stated; see the decisions ledger.
    s = builtin("SHEAR")
    results = _vertical_divergences(s, P("x"))
    witnesses = [(label, v.witness) for label, v in results if not v.zero]
    assert witnesses, "h = x: every vertical weighted divergence vanishes identically: " + ", ".join(
        label for label, _ in results
    )


@pytest.mark.criterion(4)
def test_inadmissible_generator_with_rate_along_b():
    # h = t*phi has dh/dt = phi and B(phi) = -rho, which the vertical part sees
    s = builtin("SHEAR")
    results = dict(_vertical_divergences(s, P("t*y")))
    verdict = results["U_h vertical"]
    assert not verdict.zero and verdict.witness is not None


# 5 ------------------------------------------------------------------------


@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", FLOWS)
def test_flat_connection(name):
    s = builtin(name)
    rng = random.Random(FLOWS.index(name) + 50)
    for _ in range(20):
        U = ExtendedField(rand_poly(rng), VectorField(rand_poly(rng), rand_poly(rng), rand_poly(rng)))
        W = ExtendedField(rand_poly(rng), VectorField(rand_poly(rng), rand_poly(rng), rand_poly(rng)))
        assert extended_is_zero(curvature(U, W, s.v), CFG).zero


@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", FLOWS)
def test_vertical_fields_commute_with_suspension(name):
    s = builtin(name)
    D = ExtendedField.suspension(s.v)
    levels = generate(s, depth=4, cfg=CFG)
    for lvl in levels:
        verdict = extended_is_zero(ext_bracket(D, ExtendedField.spatial(lvl.W)), CFG)
        assert verdict.zero, f"{name}: W_{lvl.k}"


# 6 ------------------------------------------------------------------------


@pytest.mark.criterion(6)
def test_bracket_algebra():
    start = time.perf_counter()
    rng = random.Random(6)
    s = builtin("SHEAR")

    for kind in KINDS:
        for _ in range(20):
            f, g, h = rand_poly(rng), rand_poly(rng), rand_poly(rng)
            a, b = rng.randint(-3, 3), rng.randint(-3, 3)
            fg = bracket(kind, f, g, s)
            assert is_zero(simplify(fg + bracket(kind, g, f, s)), CFG).zero, kind
            lin = bracket(kind, a * f + b * h, g, s) - a * fg - b * bracket(kind, h, g, s)
            assert is_zero(simplify(lin), CFG).zero, kind
            if kind is BracketKind.PHI:
                leib = bracket(kind, f, g * h, s) - g * bracket(kind, f, h, s) - fg * h
                assert is_zero(simplify(leib), CFG).zero
            assert is_zero(jacobi_residual(kind, f, g, h, s), CFG).zero, kind

    for _ in range(20):
        f, g = rand_poly(rng), rand_poly(rng)
        parts = bracket(BracketKind.PHI, f, g, s) + bracket(BracketKind.GAUGE, f, g, s)
        assert is_zero(simplify(bracket(BracketKind.OMEGA, f, g, s) - parts), CFG).zero

    for name in ("SHEAR", "LABELS"):
        sc = builtin(name)
        funcs = conserved_functions(sc, rng, 20)
        pairs = list(zip(funcs[::2], funcs[1::2]))
        levels = generate(sc, depth=4, cfg=CFG)
        live = [lvl.h for lvl in levels if lvl.k >= 1 and not lvl.truncated]
        pairs += [(a, b) for i, a in enumerate(live) for b in live[i + 1:]]
        for f, g in pairs:
            verdict = extended_is_zero(isomorphism_residual(f, g, sc, CFG), CFG)
            assert verdict.zero, f"{name}: {render(f)}, {render(g)}"

        table = involutivity_report(levels, sc, CFG)
        assert len(table) == 16
        for p in table:
            assert p.verdict.zero, f"{name}: {{h_{p.k}, h_{p.l}}}_Gauge = {render(p.value)}"

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"{elapsed:.3f} s"


# 7 ------------------------------------------------------------------------


def _cross_check_functions(s, rng):
    fixed = [s.h, s.phi, P("t"), *s.labels]
    return fixed + [rand_poly(rng) for _ in range(5)]


@pytest.mark.criterion(7)
@pytest.mark.parametrize("scenario", builtin_catalog(), ids=lambda s: s.name)
def test_adjugate_solve_matches_closed_form(scenario):
    s = scenario
    omega = build_omega(s.v, s.B, s.phi)
    rng = random.Random(7)
    if s.expect == "degenerate":
        with pytest.raises(DegenerateError):
            hamiltonian_field(s.h, omega, CFG)
        with pytest.raises(DegenerateError):
            closed_form_U(s.h, s, CFG)
        return
    for h in _cross_check_functions(s, rng):
        diff = hamiltonian_field(h, omega, CFG) - closed_form_U(h, s, CFG)
        assert extended_is_zero(diff, CFG).zero, f"{s.name}: h = {render(h)}"


# 8 ------------------------------------------------------------------------


def _cli(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


@pytest.mark.criterion(8)
def test_nonfrozen_closure_failure():
    code, text = _cli("check", "NONFROZEN", "--no-validate")
    assert code == 1
    lines = text.splitlines()
    idx = next(i for i, line in enumerate(lines) if "omega.closed" in line)
    assert "FAIL" in lines[idx]
    assert lines[idx + 1].strip().startswith("witness: t=")

    code, text = _cli("check", "NONFROZEN", "--no-validate", "--format", "json")
    rec = next(r for r in json.loads(text)["records"] if r["id"] == "omega.closed")
    assert rec["status"] == "fail" and set(rec["witness"]) == {"t", "x", "y", "z"}


@pytest.mark.criterion(8)
def test_beltrami_exit_code():
    assert _cli("check", "BELTRAMI-DEGENERATE")[0] == 2


# 9 ------------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_planar_check():
    good = check_2d(PLANAR_CATALOG["TAYLOR-GREEN"], CFG)
    assert good.exit_code == 0
    assert all(r.status == "pass" for r in good.records)

    bad = check_2d(PLANAR_CATALOG["FFW-VIOLATION"], CFG)
    closed = next(r for r in bad.records if r.id == "2d.closed")
    assert bad.exit_code == 1
    assert closed.status == "fail" and closed.witness


# 10 -----------------------------------------------------------------------


@pytest.mark.criterion(10)
def test_deterministic_json():
    cmd = [sys.executable, "-m", "kinsym", "check", "SHEAR", "--seed", "7", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["config"]["seed"] == 7


# 11 -----------------------------------------------------------------------

MAGNITUDE_CAP = 1e6
FD_BOX = IdentityConfig(samples=20, box=((-1.5, 1.5),) * 4, seed=11)


def well_conditioned(f, cfg) -> bool:
    """Central differences are only a trustworthy oracle for moderate values."""
    try:
        return all(abs(eval_at(f, p)) <= MAGNITUDE_CAP for p in cfg.points())
    except EvaluationError:
        return False


def fd_disagreement(f, cfg, rel):
    """First point where |symbolic - central difference| > rel * max(1, |f|, |df|)."""
    for var in ("t", "x", "y", "z"):
        df = differentiate(f, var)
        for p in cfg.points():
            try:
                exact = eval_at(df, p)
                approx = central_difference(f, var, p, step=1e-5)
                scale = max(1.0, abs(exact), abs(eval_at(f, p)))
            except EvaluationError:
                continue
            if abs(exact - approx) > rel * scale:
                return var, tuple(p), exact, approx
    return None


@pytest.mark.criterion(11)
def test_derivatives_match_finite_differences():
    rng = random.Random(11)
    corpus = []
    while len(corpus) < 100:
        f = random_expr(rng, depth=6)
        if well_conditioned(f, FD_BOX):
            corpus.append(f)
    corpus += [rand_poly(rng, degree=4, terms=5) for _ in range(20)]
    for f in corpus:
        bad = fd_disagreement(f, FD_BOX, 1e-6)
        assert bad is None, f"{render(f)}: {bad}"
    assert len(corpus) >= 100
