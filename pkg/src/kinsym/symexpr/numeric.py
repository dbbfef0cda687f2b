"""Floating-point evaluation and the randomized zero test."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import EvaluationError, IndeterminateError
from .nodes import VARIABLES, ZERO, Add, Div, Expr, Func, Mul, Neg, Num, Pow, Var
from .simplify import simplify, terms_of

DEFAULT_SEED = 20240607
DENOMINATOR_GUARD = 1e-3


@dataclass(frozen=True)
class SamplePoint:
    t: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in VARIABLES:
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"sample coordinate {name}={v!r} is not finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.t, self.x, self.y, self.z)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(VARIABLES, self.as_tuple()))


@dataclass(frozen=True)
class IdentityConfig:
    samples: int = 20
    box: tuple[tuple[float, float], ...] = field(default=((-2.0, 2.0),) * 4)
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if len(self.box) != 4:
            raise ValueError("sampling box needs one interval per coordinate")
        for lo, hi in self.box:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"bad sampling interval [{lo}, {hi}]")

    def with_seed(self, seed: int) -> IdentityConfig:
        return IdentityConfig(self.samples, self.box, self.abs_tol, self.rel_tol, seed)

    def points(self) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        lo = np.array([b[0] for b in self.box])
        hi = np.array([b[1] for b in self.box])
        return lo + (hi - lo) * rng.random((self.samples, 4))


@dataclass(frozen=True)
class Verdict:
    zero: bool
    witness: SamplePoint | None = None
    value: float | None = None
    evaluated: int = 0

    def __bool__(self) -> bool:
        return self.zero


def _point_tuple(p) -> tuple[float, ...]:
    if isinstance(p, SamplePoint):
        return p.as_tuple()
    if isinstance(p, dict):
        return tuple(float(p[v]) for v in VARIABLES)
    p = tuple(float(v) for v in p)
    if len(p) != 4:
        raise ValueError("a sample point has four coordinates (t, x, y, z)")
    return p


def eval_at(f: Expr, p) -> float:
    """Evaluate ``f`` at the point ``p`` in IEEE double precision."""
    pt = _point_tuple(p)
    for v in pt:
        if not math.isfinite(v):
            raise ValueError("sample point must be finite")
    env = dict(zip(VARIABLES, pt))
    return _eval(f, env, {})


def _eval(e: Expr, env: dict, memo: dict) -> float:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, Num):
        r = float(e.value)
    elif isinstance(e, Var):
        r = env[e.name]
    elif isinstance(e, Add):
        r = math.fsum(_eval(t, env, memo) for t in e.terms)
    elif isinstance(e, Mul):
        r = 1.0
        for f in e.factors:
            r *= _eval(f, env, memo)
    elif isinstance(e, Neg):
        r = -_eval(e.arg, env, memo)
    elif isinstance(e, Div):
        den = _eval(e.den, env, memo)
        if den == 0.0:
            raise EvaluationError("division by zero", e.den)
        r = _eval(e.num, env, memo) / den
    elif isinstance(e, Pow):
        b = _eval(e.base, env, memo)
        if e.exp < 0 and b == 0.0:
            raise EvaluationError("division by zero", e.base)
        try:
            r = b**e.exp
        except OverflowError:
            raise EvaluationError("overflow", e) from None
    elif isinstance(e, Func):
        a = _eval(e.arg, env, memo)
        try:
            r = {"sin": math.sin, "cos": math.cos, "exp": math.exp}[e.name](a)
        except OverflowError:
            raise EvaluationError("overflow", e) from None
    else:
        raise TypeError(f"cannot evaluate {type(e).__name__}")
    if not math.isfinite(r):
        raise EvaluationError("non-finite value", e)
    memo[key] = r
    return r


def evaluate_many(
    f: Expr, points: np.ndarray, guard: float = DENOMINATOR_GUARD
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised evaluation at rows of ``points`` (shape (n, 4)).

    Returns ``(values, bad)`` where ``bad`` marks points at which some
    denominator fell below ``guard`` in magnitude or a value went non-finite.
    """
    pts = np.asarray(points, dtype=float)
    env = {v: pts[:, i] for i, v in enumerate(VARIABLES)}
    bad = np.zeros(len(pts), dtype=bool)
    memo: dict = {}
    with np.errstate(all="ignore"):
        vals = _eval_vec(f, env, memo, bad, guard, len(pts))
        bad |= ~np.isfinite(vals)
    return vals, bad


def _eval_vec(e: Expr, env, memo, bad, guard, n):
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, Num):
        r = np.full(n, float(e.value))
    elif isinstance(e, Var):
        r = env[e.name]
    elif isinstance(e, Add):
        r = sum(_eval_vec(t, env, memo, bad, guard, n) for t in e.terms)
    elif isinstance(e, Mul):
        r = np.ones(n)
        for f in e.factors:
            r = r * _eval_vec(f, env, memo, bad, guard, n)
    elif isinstance(e, Neg):
        r = -_eval_vec(e.arg, env, memo, bad, guard, n)
    elif isinstance(e, Div):
        den = _eval_vec(e.den, env, memo, bad, guard, n)
        bad |= np.abs(den) < guard
        r = _eval_vec(e.num, env, memo, bad, guard, n) / den
    elif isinstance(e, Pow):
        b = _eval_vec(e.base, env, memo, bad, guard, n)
        if e.exp < 0:
            bad |= np.abs(b) < guard
        r = b ** float(e.exp)
    elif isinstance(e, Func):
        a = _eval_vec(e.arg, env, memo, bad, guard, n)
        r = {"sin": np.sin, "cos": np.cos, "exp": np.exp}[e.name](a)
    else:
        raise TypeError(f"cannot evaluate {type(e).__name__}")
    memo[key] = r
    return r


def is_zero(f: Expr, cfg: IdentityConfig | None = None) -> Verdict:
    """Randomized zero test.

    ``f`` is normalised first; a structural zero needs no sampling.  Otherwise
    it is evaluated at ``cfg.samples`` seeded points and declared zero iff
    ``|f(p)| <= abs_tol + rel_tol * max_i |term_i(p)|`` everywhere, the terms
    being the additive terms of the normal form.
    """
    cfg = cfg or IdentityConfig()
    g = simplify(f)
    if g == ZERO:
        return Verdict(True, evaluated=0)
    pts = cfg.points()
    terms = terms_of(g)
    bad = np.zeros(len(pts), dtype=bool)
    total = np.zeros(len(pts))
    scale = np.zeros(len(pts))
    for term in terms:
        v, b = evaluate_many(term, pts)
        bad |= b
        with np.errstate(all="ignore"):
            total = total + v
            scale = np.maximum(scale, np.abs(v))
    bad |= ~np.isfinite(total)
    if bad.sum() * 2 > len(pts):
        raise IndeterminateError(
            f"{int(bad.sum())} of {len(pts)} sample points failed to evaluate {g}"
        )
    ok = ~bad
    limit = cfg.abs_tol + cfg.rel_tol * scale
    failing = np.nonzero(ok & (np.abs(total) > limit))[0]
    if failing.size:
        i = int(failing[0])
        return Verdict(False, SamplePoint(*map(float, pts[i])), float(total[i]), int(ok.sum()))
    return Verdict(True, evaluated=int(ok.sum()))


def all_zero(exprs: Iterable[Expr], cfg: IdentityConfig | None = None) -> Verdict:
    """Conjunction of :func:`is_zero` verdicts; returns the first failure."""
    last = Verdict(True)
    for e in exprs:
        last = is_zero(e, cfg)
        if not last.zero:
            return last
    return last


def central_difference(f: Expr, var: str, p: Sequence[float], step: float = 1e-5) -> float:
    """Central finite difference of ``f`` along ``var`` at ``p``."""
    i = VARIABLES.index(var)
    lo = list(_point_tuple(p))
    hi = list(lo)
    lo[i] -= step
    hi[i] += step
    return (eval_at(f, hi) - eval_at(f, lo)) / (2 * step)
