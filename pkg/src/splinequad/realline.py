"""Limits of the swept rules deep inside a long uniform partition.

Far from both ends of a uniform partition the knot-crossing maps settle
onto a fixed point, and the per-subinterval rules converge to a single
interior rule that can be written down in closed form with ultraspherical
polynomials.  This module provides those closed forms, the fixed-point
iterations that certify them, and the composite (paired) iteration used
by the alternating-count families.

The interior rules are interesting in their own right: they are the
natural quadrature rules for splines on an infinite uniform knot grid.
"""

import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .errors import NoConvergence, NumericFailure
from .family_c0 import ParamC0, omega_pair_c0, step_alpha
from .family_c1 import ParamC1, omega_pair_c1, step_ab
from .orthopoly import PolyFamily, eval_derivs, real_roots

__all__ = [
    "LimitRule",
    "FixedPointResult",
    "realline_rule_c0",
    "realline_rule_c1",
    "fixed_point",
    "fixed_point_alpha_c0",
    "fixed_point_beta_c1",
    "seed_alpha_c1",
    "composite_half_step",
    "find_second_fixed_point",
]


@dataclass(frozen=True)
class LimitRule:
    """An interior limit rule on the reference interval [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    family: str  # "c0_interior" | "c1_interior"

    def __post_init__(self):
        if self.family not in ("c0_interior", "c1_interior"):
            raise ValueError(f"unknown limit family {self.family!r}")
        if self.family == "c1_interior":
            if self.nodes.size == 0 or self.nodes[0] != -1.0:
                raise ValueError("the c1 interior rule must start exactly at -1")


@dataclass(frozen=True)
class FixedPointResult:
    """Converged state of a knot-crossing iteration."""

    params: Union[ParamC0, ParamC1]
    iterations: int
    converged: bool
    residual: float


def _geg(order: PolyFamily, n: int, x: float):
    if n < 0:
        return (0.0, 0.0, 0.0, 0.0, 0.0)
    return eval_derivs(order, n, x)


def realline_rule_c0(n: int) -> LimitRule:
    """Interior limit rule of the continuity-0 sweep, n nodes.

    Nodes are the roots of a fixed mix of two ultraspherical (3/2)
    polynomials; the mixing constant is determined by the fixed point of
    the crossing map.  All n roots lie inside [-1, 1]; for n >= 2 the
    rule is genuinely asymmetric.
    """
    if n < 1:
        raise ValueError("need at least one node")
    delta = math.sqrt((n + 2) / n)

    def mix(x):
        c_n = _geg(PolyFamily.GEGENBAUER_3_2, n, x)
        c_n1 = _geg(PolyFamily.GEGENBAUER_3_2, n - 1, x)
        return c_n[0] + delta * c_n1[0], c_n[1] + delta * c_n1[1]

    xs = real_roots(mix, n)
    ws = np.empty(n)
    for i, x in enumerate(xs):
        _, slope = mix(x)
        c_n1 = _geg(PolyFamily.GEGENBAUER_3_2, n - 1, x)[0]
        c_n2 = _geg(PolyFamily.GEGENBAUER_3_2, n - 2, x)[0]
        companion = c_n1 * (2 * n + 1 + delta * x * n) - c_n2 * (n + 1) * x
        ws[i] = 2.0 * (n + 1) * (2 * n + 1) / (slope * companion)
    return LimitRule(xs, ws, "c0_interior")


def realline_rule_c1(n: int) -> LimitRule:
    """Interior limit rule of the continuity-1 sweep, n nodes.

    One node sits exactly on the left endpoint -1 (a trace of the
    smoothness matching); the other n-1 are the roots of an
    ultraspherical (5/2) polynomial.  Intended for n >= 2; n = 1
    degenerates to the single endpoint node carrying the full weight.
    """
    if n < 1:
        raise ValueError("need at least one node")
    w_end = 16.0 * (2 * n * n + 6 * n + 1) / (3.0 * n * (n + 1) * (n + 2) * (n + 3))
    if n == 1:
        return LimitRule(np.array([-1.0]), np.array([w_end]), "c1_interior")

    def body(x):
        t = _geg(PolyFamily.GEGENBAUER_5_2, n - 1, x)
        return t[0], t[1]

    inner = real_roots(body, n - 1)
    xs = np.concatenate([[-1.0], inner])
    ws = np.empty(n)
    ws[0] = w_end
    for i, x in enumerate(inner, start=1):
        slope = _geg(PolyFamily.GEGENBAUER_5_2, n - 1, x)[1]
        trail = _geg(PolyFamily.GEGENBAUER_5_2, n - 2, x)[0]
        ws[i] = (2.0 / 9.0) * n * (n + 1) * (n + 2) / (slope * trail * (1.0 - x * x) ** 2)
    return LimitRule(xs, ws, "c1_interior")


# ---------------------------------------------------------------------------
# fixed points of the crossing maps
# ---------------------------------------------------------------------------

def fixed_point_alpha_c0(n: int) -> float:
    """Closed-form fixed point of the plain continuity-0 crossing map."""
    return 1.0 / ((n + 1) * math.sqrt(n * (n + 2)))


def fixed_point_beta_c1(n: int) -> float:
    """Closed-form beta component of the plain continuity-1 fixed point."""
    return 1.0 / (3.0 * n * (n + 1) * (n + 2) * (n + 3))


def seed_alpha_c1(n: int, beta: float) -> float:
    """The alpha value paired with ``beta`` on the locus the paired
    crossing maps preserve; useful as a seed for half-mode searches."""
    b = float(beta)
    return (-1.0 / (n * (n + 2)) - 6 * (n * n + 2 * n - 1) * b
            + 3 * (n - 1) * n * (n + 1) ** 2 * (n + 2) * (n + 3) * b * b)


def composite_half_step(continuity: int, p, n: int, branch: str = "plus"):
    """One period of the alternating-count sweep on a uniform grid:
    paired crossing at count n followed by a plain crossing at n-1."""
    if continuity == 0:
        om = omega_pair_c0(p, n, 1.0)
        st = step_alpha(p, n, 1.0, omega=om)
        return step_alpha(st, n - 1, 1.0)
    om = omega_pair_c1(p, n, 1.0, branch=branch)
    st = step_ab(p, n, 1.0, omega=om)
    return step_ab(st, n - 1, 1.0)


_MAX_ITERS = 500
_FP_TOL = 1e-13


def fixed_point(continuity: int, mode: str, n: int) -> FixedPointResult:
    """Iterate the uniform-grid crossing map from the zero state.

    ``mode`` is "full" (plain crossings) or "half" (one paired crossing
    plus one plain crossing per iteration).  Converged means successive
    states differ by less than 1e-13 in the 1-norm; otherwise
    NoConvergence is raised, carrying the best state reached, so callers
    can still report it.
    """
    if continuity not in (0, 1):
        raise ValueError("continuity must be 0 or 1")
    if mode not in ("full", "half"):
        raise ValueError("mode must be 'full' or 'half'")
    state = ParamC0(0.0) if continuity == 0 else ParamC1(0.0, 0.0)
    diff = math.inf
    for it in range(1, _MAX_ITERS + 1):
        try:
            if mode == "full":
                nxt = (step_alpha(state, n, 1.0) if continuity == 0
                       else step_ab(state, n, 1.0))
            else:
                nxt = composite_half_step(continuity, state, n)
        except NumericFailure as e:
            raise NoConvergence(
                f"crossing map broke down at iteration {it}: {e}",
                params=state, iterations=it, residual=diff) from e
        if continuity == 0:
            diff = abs(nxt.alpha - state.alpha)
        else:
            diff = abs(nxt.alpha - state.alpha) + abs(nxt.beta - state.beta)
        state = nxt
        if diff < _FP_TOL:
            return FixedPointResult(state, it, True, diff)
    raise NoConvergence(
        f"no fixed point within {_MAX_ITERS} iterations (last diff {diff:.3e})",
        params=state, iterations=_MAX_ITERS, residual=diff)


def find_second_fixed_point(n: int, continuity: int = 1) -> List[ParamC1]:
    """Best-effort search for further fixed points of the plain
    continuity-1 crossing map, beyond the attracting one.

    Runs a damped Newton iteration (finite-difference Jacobian) from a
    small set of seeds and reports whatever distinct extra solutions it
    finds; an empty list just means the search found none.
    """
    if continuity != 1:
        raise ValueError("only the continuity-1 map is searched")
    try:
        primary = fixed_point(1, "full", n).params
    except NoConvergence as e:
        primary = e.params

    def residual(a, b):
        nxt = step_ab(ParamC1(a, b), n, 1.0)
        return np.array([nxt.alpha - a, nxt.beta - b])

    found: List[ParamC1] = []
    seeds = [(-0.5, -0.02), (-1.5, 0.05), (2.0, 0.002), (0.9, -0.02),
             (0.3, 0.05), (-0.2, 0.002)]
    for a0, b0 in seeds:
        x = np.array([a0, b0])
        ok = False
        try:
            for _ in range(80):
                r = residual(*x)
                if np.max(np.abs(r)) < 1e-12:
                    ok = True
                    break
                # finite-difference Jacobian
                J = np.empty((2, 2))
                for j in range(2):
                    h = 1e-7 * max(1.0, abs(x[j]))
                    xp = x.copy()
                    xp[j] += h
                    J[:, j] = (residual(*xp) - r) / h
                step = np.linalg.solve(J, r)
                # damp long steps to keep the iteration in range
                scale = min(1.0, 1.0 / np.max(np.abs(step)))
                x = x - scale * step
        except (NumericFailure, np.linalg.LinAlgError, FloatingPointError):
            continue
        if not ok:
            continue
        cand = ParamC1(float(x[0]), float(x[1]))
        if abs(cand.alpha - primary.alpha) + abs(cand.beta - primary.beta) < 1e-8:
            continue
        if any(abs(cand.alpha - f.alpha) + abs(cand.beta - f.beta) < 1e-8 for f in found):
            continue
        found.append(cand)
    return found
