from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from kinsym.errors import DegenerateError
from kinsym.symexpr import IdentityConfig, central_difference, eval_at, is_zero, parse_expr
from kinsym.symexpr.random_exprs import random_polynomial
from kinsym.vectorcalc import (
    ExtendedField,
    VectorField,
    curl,
    div,
    ext_bracket,
    extended_is_zero,
    frozen_field_residual,
    grad,
    lie_bracket3,
    material_derivative,
    symmetry_residual,
    vector_is_zero,
    weighted_div,
)

P = parse_expr
SPACE = ("x", "y", "z")


def vec(*parts):
    return VectorField(*(P(p) for p in parts))


def random_field(rng):
    return VectorField(*(random_polynomial(rng, degree=2, terms=3) for _ in range(3)))


def test_grad_curl_div_examples():
    assert grad(P("y*(x - t*z)")) == vec("y", "x - t*z", "-(t*y)")
    assert curl(vec("-y", "x", "0")) == vec("0", "0", "2")
    assert div(vec("x", "y", "-2*z")) == P("0")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_second_order_identities(seed):
    rng = random.Random(seed)
    f = random_polynomial(rng, degree=3, terms=4)
    V = random_field(rng)
    assert vector_is_zero(curl(grad(f))).zero
    assert is_zero(div(curl(V))).zero


def test_curl_matches_finite_differences():
    cfg = IdentityConfig(samples=6)
    V = VectorField(P("sin(x*y) + z^2"), P("exp(z)*x"), P("cos(t*y) - x*z"))
    C = curl(V)
    for p in cfg.points():
        d = lambda comp, var: central_difference(V[comp], var, p)
        fd = (d(2, "y") - d(1, "z"), d(0, "z") - d(2, "x"), d(1, "x") - d(0, "y"))
        for i in range(3):
            assert eval_at(C[i], p) == pytest.approx(fd[i], rel=1e-6, abs=1e-6)


def test_lie_bracket_matches_finite_differences():
    V = vec("y*z", "-(x*z)", "0")
    W = vec("sin(y)", "x^2", "z*x")
    bracket = lie_bracket3(V, W)
    cfg = IdentityConfig(samples=5)
    for p in cfg.points():
        for i in range(3):
            # V(W^i) - W(V^i) by differences on each component
            vw = sum(eval_at(V[j], p) * central_difference(W[i], SPACE[j], p) for j in range(3))
            wv = sum(eval_at(W[j], p) * central_difference(V[i], SPACE[j], p) for j in range(3))
            assert eval_at(bracket[i], p) == pytest.approx(vw - wv, rel=1e-6, abs=1e-6)


def test_lie_bracket_antisymmetric():
    rng = random.Random(2)
    V, W = random_field(rng), random_field(rng)
    assert vector_is_zero(lie_bracket3(V, W) + lie_bracket3(W, V)).zero


def test_ext_bracket_with_time():
    D = ExtendedField.suspension(vec("z", "0", "0"))
    U = ExtendedField(P("t"), vec("x", "0", "0"))
    # xi: D(t) - U(1) = 1;  u_x: D(x) - U(z) = z
    b = ext_bracket(D, U)
    assert b.xi == P("1")
    assert b.u == vec("z", "0", "0")


def test_frozen_field_residual():
    v = vec("z", "0", "0")
    assert vector_is_zero(frozen_field_residual(vec("0", "1", "0"), v)).zero
    assert not vector_is_zero(frozen_field_residual(vec("0", "x", "0"), v)).zero


def test_material_derivative():
    v = vec("z", "0", "0")
    assert material_derivative(P("x - t*z"), v) == P("0")
    assert material_derivative(P("x"), v) == P("z")


def test_symmetry_residual_for_time_reparametrisation():
    v = vec("-y", "x", "0")
    D = ExtendedField.suspension(v)
    U = D.scale(P("x^2 + y^2"))
    assert extended_is_zero(symmetry_residual(U, v)).zero


def test_weighted_div():
    assert is_zero(weighted_div(vec("x", "0", "0"), P("1/x"))).zero
    assert weighted_div(vec("x", "0", "0"), P("2")) == P("1")
    with pytest.raises(DegenerateError):
        weighted_div(vec("x", "0", "0"), P("x - x"))


def test_vector_field_shape():
    with pytest.raises(ValueError):
        VectorField.of(P("x"), P("y"))
    assert VectorField.of([1, 2, 3]) == VectorField(1, 2, 3)
