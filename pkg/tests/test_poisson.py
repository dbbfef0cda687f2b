from __future__ import annotations

import random

import pytest

from kinsym.errors import DegenerateError
from kinsym.flowcli import builtin
from kinsym.hierarchy import bracket_level, generate
from kinsym.poisson import BracketKind, bracket, involutivity_report, isomorphism_residual, jacobi_residual
from kinsym.symexpr import ZERO, is_zero, parse_expr, simplify
from kinsym.symexpr.random_exprs import random_polynomial
from kinsym.symplectic import build_omega, check_closed
from kinsym.vectorcalc import extended_is_zero

P = parse_expr
KINDS = list(BracketKind)


def rand_poly(rng):
    return random_polynomial(rng, degree=2, terms=3)


@pytest.mark.parametrize("kind", KINDS)
def test_self_bracket_vanishes(kind, rotation):
    f = P("x*y + t*z^2")
    assert bracket(kind, f, f, rotation) == ZERO


@pytest.mark.parametrize("kind", KINDS)
def test_antisymmetry_and_bilinearity(kind, shear, cfg):
    rng = random.Random(4)
    for _ in range(5):
        f, g, h = rand_poly(rng), rand_poly(rng), rand_poly(rng)
        assert is_zero(simplify(bracket(kind, f, g, shear) + bracket(kind, g, f, shear)), cfg).zero
        lhs = bracket(kind, 3 * f + h, g, shear)
        rhs = 3 * bracket(kind, f, g, shear) + bracket(kind, h, g, shear)
        assert is_zero(simplify(lhs - rhs), cfg).zero


def test_decomposition(rotation, cfg):
    rng = random.Random(9)
    for _ in range(5):
        f, g = rand_poly(rng), rand_poly(rng)
        total = bracket(BracketKind.OMEGA, f, g, rotation)
        parts = bracket(BracketKind.PHI, f, g, rotation) + bracket(BracketKind.GAUGE, f, g, rotation)
        assert is_zero(simplify(total - parts), cfg).zero


def test_phi_leibniz(labels_scenario, cfg):
    rng = random.Random(8)
    s = labels_scenario
    for _ in range(5):
        f, g, h = rand_poly(rng), rand_poly(rng), rand_poly(rng)
        r = bracket(BracketKind.PHI, f, g * h, s) - g * bracket(BracketKind.PHI, f, h, s) - bracket(BracketKind.PHI, f, g, s) * h
        assert is_zero(simplify(r), cfg).zero


def test_conserved_functions_see_no_gauge_part(shear, cfg):
    f, g = P("y*(x - t*z)^2"), P("z + y^3")
    assert is_zero(bracket(BracketKind.GAUGE, f, g, shear), cfg).zero
    assert is_zero(simplify(bracket(BracketKind.OMEGA, f, g, shear) - bracket(BracketKind.PHI, f, g, shear)), cfg).zero


def test_omega_jacobi_tracks_closure(shear, cfg):
    assert is_zero(jacobi_residual(BracketKind.OMEGA, P("x"), P("y"), P("z"), shear), cfg).zero
    bad = builtin("NONFROZEN")
    assert not check_closed(build_omega(bad.v, bad.B, bad.phi), cfg).zero
    rng = random.Random(3)
    verdicts = [
        is_zero(jacobi_residual(BracketKind.OMEGA, rand_poly(rng), rand_poly(rng), rand_poly(rng), bad), cfg).zero
        for _ in range(5)
    ]
    assert not all(verdicts)


@pytest.mark.parametrize("kind", KINDS)
def test_jacobi_degenerate_pair(kind, rotation):
    f = P("x*t")
    assert jacobi_residual(kind, f, f, P("y"), rotation) == ZERO


def test_isomorphism_examples(shear, cfg):
    assert extended_is_zero(isomorphism_residual(P("x*y"), P("x*y"), shear), cfg).zero
    assert extended_is_zero(isomorphism_residual(shear.phi, P("t"), shear), cfg).zero
    levels = generate(shear)
    assert extended_is_zero(isomorphism_residual(levels[1].h, levels[2].h, shear), cfg).zero


def test_isomorphism_needs_conserved_functions(shear, cfg):
    # x and y z are not Lagrangian invariants of the shear flow
    assert not extended_is_zero(isomorphism_residual(P("x"), P("y*z"), shear), cfg).zero


def test_phi_bracket_matches_level_brackets(labels_scenario, cfg):
    s = labels_scenario
    levels = generate(s, depth=4)
    for a, b in ((1, 2), (1, 3), (2, 3), (3, 1)):
        _, hab = bracket_level(levels[a], levels[b], s)
        assert is_zero(simplify(hab - bracket(BracketKind.PHI, levels[a].h, levels[b].h, s)), cfg).zero


def test_involutivity(labels_scenario, cfg):
    levels = generate(labels_scenario, depth=4)
    table = involutivity_report(levels, labels_scenario, cfg)
    assert len(table) == 16
    assert all(p.verdict.zero for p in table)
    probe = involutivity_report(levels, labels_scenario, cfg, extra=[P("x")])
    bad = [p for p in probe if not p.verdict.zero]
    assert bad and all(-1 in (p.k, p.l) for p in bad)
    assert bad[0].verdict.witness is not None


def test_degenerate_scenario():
    with pytest.raises(DegenerateError):
        bracket(BracketKind.PHI, P("x"), P("y"), builtin("BELTRAMI-DEGENERATE"))
