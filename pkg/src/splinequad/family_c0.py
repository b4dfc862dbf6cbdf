"""Reference rules and sweep maps for the continuity-0 spline families.

The global rules are assembled subinterval by subinterval.  On the reference
interval [-1, 1] each subinterval carries a one-parameter state ``alpha``
describing how its local polynomial couples to everything already swept
past; the nodes are the roots of a rooted combination

    R(x) = Q_n(x; alpha) + omega * Q_{n-1}(x; alpha)

of two boundary-coupled polynomials, and the weights come from a closed
form in R'(x) and Q_{n-1}(x).  Crossing a knot updates alpha through a
rational step map, rescaled by the ratio of neighbouring subinterval
lengths.  Interior (doubly coupled) subintervals use the two-sided
analogue M_n(x; alpha_left, alpha_right).

Everything here works at a single subinterval's level.  The engine module
owns the sweep orders and the bookkeeping of which map runs where.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np

from .errors import DegenerateDenominator
from .orthopoly import PolyFamily, EvalTriple, eval_derivs, real_roots

__all__ = [
    "ParamC0",
    "ReferenceRule",
    "q_eval_c0",
    "m_eval_c0",
    "boundary_rule_c0",
    "middle_rule_c0",
    "step_alpha",
    "omega_pair_c0",
    "bridge_omega_c0",
    "middle_pair_params_c0",
    "gegenbauer_oracle_c0",
]


@dataclass(frozen=True)
class ParamC0:
    """Coupling state of one subinterval in a continuity-0 sweep."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))


ParamC0Like = Union[ParamC0, float, int]


class ReferenceRule(NamedTuple):
    """Nodes and weights of a quadrature rule on the reference interval."""

    nodes: np.ndarray
    weights: np.ndarray


def _alpha(p: ParamC0Like) -> float:
    if isinstance(p, ParamC0):
        return p.alpha
    if isinstance(p, (int, float)):
        return float(p)
    raise TypeError(f"expected ParamC0 or a number, got {type(p).__name__}")


def _empty_rule() -> ReferenceRule:
    return ReferenceRule(np.empty(0), np.empty(0))


# ---------------------------------------------------------------------------
# one-sided polynomials Q and their evaluation
# ---------------------------------------------------------------------------

def _boundary_scale(n: int, a: float) -> float:
    """Scalar that multiplies the leading Jacobi term; squared in weights."""
    return 1.0 + a * n * (n + 1)


def _q_eval(a: float, n: int, x: float) -> EvalTriple:
    # Q is a first-order perturbation of the Jacobi polynomial P_n^(1,0):
    #   Q = (scale + a*n) P + a (1-x) P'
    # and differentiating moves the (1-x) factor through the chain.
    p0, p1, p2, p3, _ = eval_derivs(PolyFamily.JACOBI_1_0, n, x)
    c = _boundary_scale(n, a) + a * n
    omx = 1.0 - x
    v = c * p0 + a * omx * p1
    d1 = c * p1 + a * (omx * p2 - p1)
    d2 = c * p2 + a * (omx * p3 - 2.0 * p2)
    return EvalTriple(v, d1, d2)


def q_eval_c0(p: ParamC0Like, n: int, x: float) -> EvalTriple:
    """Value/derivatives of the one-sided coupled polynomial of degree n."""
    return _q_eval(_alpha(p), n, float(x))


# ---------------------------------------------------------------------------
# two-sided polynomials M and their evaluation
# ---------------------------------------------------------------------------

def _middle_scale(n: int, aL: float, aR: float) -> float:
    return 1.0 + n * n * (aL + aR + (n - 1) * (n + 1) * aL * aR)


def _m_eval(aL: float, aR: float, n: int, x: float) -> EvalTriple:
    p0, p1, p2, p3, _ = eval_derivs(PolyFamily.LEGENDRE, n, x)
    H = _middle_scale(n, aL, aR)
    H1 = aL + aR + 2.0 * n * (n + 1) * aL * aR
    cpl = aL * (1.0 + aR * n * (n + 1))   # left coupling, pairs with (1-x)
    cpr = aR * (1.0 + aL * n * (n + 1))   # right coupling, pairs with (1+x)
    base = H + n * H1
    lin = cpl * (1.0 - x) - cpr * (1.0 + x)
    lin_d = -cpl - cpr
    v = base * p0 + lin * p1
    d1 = base * p1 + lin * p2 + lin_d * p1
    d2 = base * p2 + lin * p3 + 2.0 * lin_d * p2
    return EvalTriple(v, d1, d2)


def m_eval_c0(left: ParamC0Like, right: ParamC0Like, n: int, x: float) -> EvalTriple:
    """Value/derivatives of the two-sided coupled polynomial of degree n."""
    return _m_eval(_alpha(left), _alpha(right), n, float(x))


# ---------------------------------------------------------------------------
# reference rules
# ---------------------------------------------------------------------------

def boundary_rule_c0(p: ParamC0Like, n: int, omega: Optional[float] = None) -> ReferenceRule:
    """n-node reference rule for a one-sided coupled subinterval.

    With ``omega`` None the rule is Gaussian for its local space; a float
    selects a member of the one-parameter family rooted at
    Q_n + omega*Q_{n-1}.  Raises RootCountMismatch when some root leaves
    [-1, 1] (the rule does not exist for this state) and
    DegenerateDenominator when a node lands on the coupled endpoint.
    """
    a = _alpha(p)
    if n < 0:
        raise ValueError("node count must be >= 0")
    if n == 0:
        return _empty_rule()
    om = None if omega is None else float(omega)

    def rooted(x):
        t = _q_eval(a, n, x)
        if om is None:
            return t.value, t.d1
        u = _q_eval(a, n - 1, x)
        return t.value + om * u.value, t.d1 + om * u.d1

    xs = real_roots(rooted, n)
    scale = _boundary_scale(n, a)
    ws = np.empty(n)
    for i, x in enumerate(xs):
        _, slope = rooted(x)
        trail = _q_eval(a, n - 1, x).value
        omx = 1.0 - x
        if abs(omx) < 1e-13:
            raise DegenerateDenominator("node at the coupled endpoint x=1")
        den = n * (n + 1) * slope * trail * omx
        if den == 0.0 or not math.isfinite(den):
            raise DegenerateDenominator("vanishing factor in boundary weight")
        ws[i] = 2.0 * (2 * n + 1) * scale * scale / den
        if not math.isfinite(ws[i]):
            raise DegenerateDenominator("non-finite boundary weight")
    return ReferenceRule(xs, ws)


def middle_rule_c0(left: ParamC0Like, right: ParamC0Like, n: int,
                   omega: float = 0.0) -> ReferenceRule:
    """n-node reference rule for a doubly coupled (interior) subinterval."""
    aL, aR = _alpha(left), _alpha(right)
    if n < 0:
        raise ValueError("node count must be >= 0")
    if n == 0:
        return _empty_rule()
    om = float(omega)

    def rooted(x):
        t = _m_eval(aL, aR, n, x)
        if om == 0.0:
            return t.value, t.d1
        u = _m_eval(aL, aR, n - 1, x)
        return t.value + om * u.value, t.d1 + om * u.d1

    xs = real_roots(rooted, n)
    H = _middle_scale(n, aL, aR)
    ws = np.empty(n)
    for i, x in enumerate(xs):
        _, slope = rooted(x)
        trail = _m_eval(aL, aR, n - 1, x).value
        den = n * slope * trail
        if den == 0.0 or not math.isfinite(den):
            raise DegenerateDenominator("vanishing factor in interior weight")
        ws[i] = 2.0 * H * H / den
        if not math.isfinite(ws[i]):
            raise DegenerateDenominator("non-finite interior weight")
    return ReferenceRule(xs, ws)


# ---------------------------------------------------------------------------
# knot-crossing maps
# ---------------------------------------------------------------------------

def step_alpha(p: ParamC0Like, n: int, lam: float,
               omega: Optional[float] = None) -> ParamC0:
    """Push the coupling state across a knot.

    ``lam`` is the length ratio (next subinterval / current one).  With
    ``omega`` None this is the plain Gaussian step; a float applies the
    paired step that absorbs the rooted-combination choice made on the
    current subinterval.
    """
    a = _alpha(p)
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("length ratio must be positive")
    if omega is None:
        gam = (n + 1) * (1.0 + n * (n + 2) * a)
        if gam == 0.0:
            raise DegenerateDenominator("degenerate Gaussian step state")
        raw = (1.0 + (n + 1) ** 2 * a) / ((n + 1) * gam)
    else:
        om = float(omega)
        gam = (n + 1) * (1.0 + n * (n + 2) * a) + om * n * (1.0 + (n - 1) * (n + 1) * a)
        den = n * (n + 1) * gam
        if den == 0.0:
            raise DegenerateDenominator("degenerate paired step state")
        raw = (n * (1.0 + (n + 1) ** 2 * a) + om * (n + 1) * (1.0 + n * n * a)) / den
    return ParamC0(raw / lam)


def omega_pair_c0(p: ParamC0Like, n: int, lam: float) -> float:
    """Rooting weight that lets an n-node rule pair with an (n-1)-node one
    across a knot of length ratio ``lam``."""
    a = _alpha(p)
    lam = float(lam)
    num = n * (1.0 + (n + 1) ** 2 * a) + lam * (n + 1) * (1.0 + n * (n + 2) * a)
    den = (n + 1) * (1.0 + n * n * a) + lam * n * (1.0 + (n - 1) * (n + 1) * a)
    if den == 0.0:
        raise DegenerateDenominator("degenerate pairing state")
    return -num / den


def bridge_omega_c0(p: ParamC0Like, n: int, target_raw: float) -> float:
    """Rooting weight whose paired step lands exactly on ``target_raw``
    (before any length rescale).  Used to splice a prescribed interior
    parameter into the left sweep."""
    a = _alpha(p)
    T = float(target_raw)
    num = T * n * (n + 1) ** 2 * (1.0 + n * (n + 2) * a) - n * (1.0 + (n + 1) ** 2 * a)
    den = (n + 1) * (1.0 + n * n * a) - T * n * n * (n + 1) * (1.0 + (n - 1) * (n + 1) * a)
    if den == 0.0:
        raise DegenerateDenominator("bridge target is unreachable for this state")
    return num / den


def middle_pair_params_c0(omega_free: float, lam: float) -> Tuple[float, float]:
    """Split the free parameter of an even-count interior pair into the
    right/left coupling values (alpha_right_mid, alpha_left_mid)."""
    om = float(omega_free)
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("length ratio must be positive")
    return om, -om / lam


# ---------------------------------------------------------------------------
# independent re-expansion (cross-check oracle)
# ---------------------------------------------------------------------------

def _geg32(n: int, x: float) -> float:
    if n < 0:
        return 0.0
    return eval_derivs(PolyFamily.GEGENBAUER_3_2, n, x)[0]


def gegenbauer_oracle_c0(p, n: int, x: float) -> float:
    """Evaluate the same coupled polynomial through its ultraspherical
    expansion.  Pass a single state for the one-sided polynomial or a
    (left, right) pair for the two-sided one.  Shares no code path with
    q_eval_c0 / m_eval_c0, which is the point.
    """
    x = float(x)
    if isinstance(p, (tuple, list)) and len(p) == 2:
        aL, aR = _alpha(p[0]), _alpha(p[1])

        def H(m):
            return 1.0 + m * m * (aL + aR + (m - 1) * (m + 1) * aL * aR)

        val = (_geg32(n, x) * H(n) - _geg32(n - 2, x) * H(n + 1)) / (2 * n + 1)
        return val + _geg32(n - 1, x) * (aL - aR)
    a = _alpha(p)

    def F(m):
        return 1.0 + a * m * (m + 1)

    return (_geg32(n, x) * F(n) + _geg32(n - 1, x) * F(n + 1)) / (n + 1)
