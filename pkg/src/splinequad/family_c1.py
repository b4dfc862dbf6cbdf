"""Reference rules and sweep maps for the continuity-1 spline families.

Same architecture as family_c0, one derivative smoother: the coupling
state per subinterval is a pair (alpha, beta), the one-sided polynomials
are perturbations of Jacobi (2,0) polynomials, the two-sided ones of
Legendre polynomials, and the knot-crossing maps are rational in the
state with integer coefficient polynomials in the node count n.

The coefficient blocks below are long but shallow: each is a polynomial
in (n, alpha, beta) that multiplies one power of the rooting weight in
the paired crossing map.  They are kept verbatim in expanded form --
factoring them would only invite transcription slips -- and the test
suite pins them against independently expanded forms and against brute
exactness of the assembled rules.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .errors import DegenerateDenominator, NegativeDiscriminant
from .family_c0 import ReferenceRule
from .orthopoly import PolyFamily, EvalTriple, eval_derivs, real_roots

__all__ = [
    "ParamC1",
    "q_eval_c1",
    "m_eval_c1",
    "boundary_rule_c1",
    "middle_rule_c1",
    "step_ab",
    "omega_pair_c1",
    "bridge_omega_c1",
    "middle_pair_params_c1",
    "gegenbauer_oracle_c1",
]


@dataclass(frozen=True)
class ParamC1:
    """Coupling state of one subinterval in a continuity-1 sweep."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))


ParamC1Like = Union[ParamC1, Tuple[float, float]]


def _ab(p: ParamC1Like) -> Tuple[float, float]:
    if isinstance(p, ParamC1):
        return p.alpha, p.beta
    if isinstance(p, (tuple, list)) and len(p) == 2:
        return float(p[0]), float(p[1])
    raise TypeError(f"expected ParamC1 or an (alpha, beta) pair, got {type(p).__name__}")


def _empty_rule() -> ReferenceRule:
    return ReferenceRule(np.empty(0), np.empty(0))


# ---------------------------------------------------------------------------
# one-sided polynomials
# ---------------------------------------------------------------------------

def _boundary_scale(n, a, b):
    return 1.0 + n * (n + 2) * (a + 6 * (n * n + 2 * n - 1) * b
                                - 3 * (n - 1) * n * (n + 1) ** 2 * (n + 2) * (n + 3) * b * b)


def _d1_scale(n, a, b):
    return a + 12 * b * ((n * n + 3 * n + 1) - n * (n + 1) ** 2 * (n + 2) ** 2 * (n + 3) * b)


def _d2_scale(n, b):
    return b * (1.0 - 3 * n * (n + 1) * (n + 2) * (n + 3) * b)


def _q_eval(a: float, b: float, n: int, x: float) -> EvalTriple:
    p0, p1, p2, p3, p4 = eval_derivs(PolyFamily.JACOBI_2_0, n, x)
    F = _boundary_scale(n, a, b)
    F1 = _d1_scale(n, a, b)
    F2 = _d2_scale(n, b)
    base = F + n * F1
    omx = 1.0 - x
    v = base * p0 + omx * F1 * p1 - 36.0 * F2 * p1 + 12.0 * F2 * omx * p2
    d1 = (base * p1 + F1 * (omx * p2 - p1)
          - 36.0 * F2 * p2 + 12.0 * F2 * (omx * p3 - p2))
    d2 = (base * p2 + F1 * (omx * p3 - 2.0 * p2)
          - 36.0 * F2 * p3 + 12.0 * F2 * (omx * p4 - 2.0 * p3))
    return EvalTriple(v, d1, d2)


def q_eval_c1(p: ParamC1Like, n: int, x: float) -> EvalTriple:
    """Value/derivatives of the one-sided coupled polynomial of degree n."""
    a, b = _ab(p)
    return _q_eval(a, b, n, float(x))


# ---------------------------------------------------------------------------
# two-sided polynomials
# ---------------------------------------------------------------------------

def _corner(n, a, b):
    return 1.0 + n * (n - 1) * (a + (n + 1) * (n - 2) * b
                                * (6.0 - 3.0 * b * (n + 2) * n * (n - 1) * (n - 3)))


def _mix_d1(n, a, b):
    return a + 12 * n * (n + 1) * b * (1.0 - (n - 1) * (n + 2) * (n * n + n + 3) * b)


def _mix_d2(n, b):
    return b * (1.0 - 3 * (n - 1) * n * (n + 1) * (n + 2) * b)


def _mix_base(n, a, b):
    return _corner(n + 1, a, b) + 24 * n * (n + 1) * _mix_d2(n, b)


def _mix_sym(n, a, b):
    return 1.0 + n * (n + 1) * (2 * a + 3 * (n - 1) * n * (n + 1) * (n + 2)
                                * (13 * n * n + 13 * n - 18) * b * b)


def _middle_scale(n, aL, bL, aR, bR):
    return ((_corner(n, aL, bL) * _corner(n + 1, aR, bR)
             + _corner(n, aR, bR) * _corner(n + 1, aL, bL)) / 2.0
            - 36 * (n - 1) * n * n * (n + 1) * (bL - bR) ** 2)


def _m_eval(aL, bL, aR, bR, n, x) -> EvalTriple:
    p0, p1, p2, p3, p4 = eval_derivs(PolyFamily.LEGENDRE, n, x)
    hiL = _corner(n + 1, aL, bL)
    hiR = _corner(n + 1, aR, bR)
    d1L = _mix_d1(n, aL, bL) * hiR
    d1R = _mix_d1(n, aR, bR) * hiL
    d2L = _mix_d2(n, bL) * hiR
    d2R = _mix_d2(n, bR) * hiL
    base = (_mix_base(n, aL, bL) * hiR + _mix_base(n, aR, bR) * hiL) / 2.0
    lin1 = d1L * (1.0 - x) - d1R * (1.0 + x)
    lin1_d = -(d1L + d1R)
    lin2 = d2L * (1.0 - x) + d2R * (1.0 + x)
    lin2_d = -d2L + d2R
    skew = 36.0 * (bL - bR) ** 2 * n * (n + 1)
    drift = 12.0 * (_mix_d2(n, bR) * _mix_sym(n, aL, bL)
                    - _mix_d2(n, bL) * _mix_sym(n, aR, bR))
    twist = 72.0 * n * (n + 1) * (bL - bR) * (bL + bR - 6 * (n - 1) * n * (n + 1) * (n + 2) * bL * bR)
    nn = float(n * (n + 1))
    v = (base * p0 + lin1 * p1 + 12.0 * lin2 * p2
         - skew * (nn * p0 - 2.0 * x * p1 + 2.0 * p2)
         + drift * p1 + twist * x * p2)
    d1 = (base * p1 + lin1 * p2 + lin1_d * p1 + 12.0 * (lin2 * p3 + lin2_d * p2)
          - skew * ((nn - 2.0) * p1 - 2.0 * x * p2 + 2.0 * p3)
          + drift * p2 + twist * (p2 + x * p3))
    d2 = (base * p2 + lin1 * p3 + 2.0 * lin1_d * p2 + 12.0 * (lin2 * p4 + 2.0 * lin2_d * p3)
          - skew * ((nn - 4.0) * p2 - 2.0 * x * p3 + 2.0 * p4)
          + drift * p3 + twist * (2.0 * p3 + x * p4))
    return EvalTriple(v, d1, d2)


def m_eval_c1(left: ParamC1Like, right: ParamC1Like, n: int, x: float) -> EvalTriple:
    """Value/derivatives of the two-sided coupled polynomial of degree n."""
    aL, bL = _ab(left)
    aR, bR = _ab(right)
    return _m_eval(aL, bL, aR, bR, n, float(x))


# ---------------------------------------------------------------------------
# reference rules
# ---------------------------------------------------------------------------

def boundary_rule_c1(p: ParamC1Like, n: int, omega: Optional[float] = None) -> ReferenceRule:
    """n-node reference rule for a one-sided coupled subinterval."""
    a, b = _ab(p)
    if n < 0:
        raise ValueError("node count must be >= 0")
    if n == 0:
        return _empty_rule()
    om = None if omega is None else float(omega)

    def rooted(x):
        t = _q_eval(a, b, n, x)
        if om is None:
            return t.value, t.d1
        u = _q_eval(a, b, n - 1, x)
        return t.value + om * u.value, t.d1 + om * u.d1

    xs = real_roots(rooted, n)
    F = _boundary_scale(n, a, b)
    ws = np.empty(n)
    for i, x in enumerate(xs):
        _, slope = rooted(x)
        trail = _q_eval(a, b, n - 1, x).value
        omx2 = (1.0 - x) ** 2
        if omx2 < 1e-26:
            raise DegenerateDenominator("node at the coupled endpoint x=1")
        den = n * (n + 2) * slope * trail * omx2
        if den == 0.0 or not math.isfinite(den):
            raise DegenerateDenominator("vanishing factor in boundary weight")
        ws[i] = 8.0 * (n + 1) * F * F / den
        if not math.isfinite(ws[i]):
            raise DegenerateDenominator("non-finite boundary weight")
    return ReferenceRule(xs, ws)


def middle_rule_c1(left: ParamC1Like, right: ParamC1Like, n: int,
                   omega: float = 0.0) -> ReferenceRule:
    """n-node reference rule for a doubly coupled (interior) subinterval."""
    aL, bL = _ab(left)
    aR, bR = _ab(right)
    if n < 0:
        raise ValueError("node count must be >= 0")
    if n == 0:
        return _empty_rule()
    om = float(omega)

    def rooted(x):
        t = _m_eval(aL, bL, aR, bR, n, x)
        if om == 0.0:
            return t.value, t.d1
        u = _m_eval(aL, bL, aR, bR, n - 1, x)
        return t.value + om * u.value, t.d1 + om * u.d1

    xs = real_roots(rooted, n)
    H = _middle_scale(n, aL, bL, aR, bR)
    ws = np.empty(n)
    for i, x in enumerate(xs):
        _, slope = rooted(x)
        trail = _m_eval(aL, bL, aR, bR, n - 1, x).value
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

def _plain_step_raw(a, b, n):
    gam = (n + 1) * (n + 2) * (1.0 + n * (n + 3) * a
                               + 6 * n * (n + 3) * (n * n + 3 * n - 1) * b
                               - 3 * n ** 2 * (n - 1) * (n + 1) * (n + 2) * (n + 3) ** 2 * (n + 4) * b * b) / 2.0
    if gam == 0.0:
        raise DegenerateDenominator("degenerate Gaussian step state")
    E = 1.0 + (n + 1) * (n + 2) * (a + 3 * n * (n + 3) * b
                                   * (2.0 - (n - 1) * (n + 1) * (n + 2) * (n + 4) * b))
    G = 1.0 - 3 * n * (n + 1) * (n + 2) * (n + 3) * b
    a_new = -a + E * (4 * (2 * n * n + 6 * n + 3)
                      + n * (n + 3) * ((11 * n * n + 33 * n + 16) * a
                                       + 12 * (4 * n ** 4 + 24 * n ** 3 + 34 * n ** 2 - 6 * n - 8) * b
                                       + 3 * n * (n + 1) * (n + 2) * (n + 3) * (
                                           -4 * (n + 1) * (n + 2) * (2 * n * n + 6 * n - 5) * b * b
                                           - 3 * (n - 1) * n * (n + 1) * (n + 2) * (n + 3) * (n + 4) * a * b * b
                                           + 2 * (3 * n * n + 9 * n - 6) * a * b
                                           + a * a))) / (12.0 * gam * gam)
    b_new = b + E * G / (6.0 * (n + 1) * (n + 2) * gam)
    return a_new, b_new


def _pair_blocks(a, b, n):
    """Coefficient blocks of the paired knot-crossing map.

    Returns (g0, g1, A0, A1, A2, B0, B1) with

        gamma(om) = g0 + g1*om
        A(om)     = A0 + A1*om + A2*om**2
        B(om)     = B0 + B1*om

    and the stepped state before length rescaling is

        alpha' = 4 A / (3 ((n+1) gamma)**2)
        beta'  =   B / (3 gamma (n+1)**2 (n+2) n).
    """
    g0 = -(n + 2) * (1.0 + n * (n + 3) * a
                     + 6 * n * (n + 3) * (n * n + 3 * n - 1) * b
                     - 3 * n ** 2 * (n - 1) * (n + 1) * (n + 2) * (n + 3) ** 2 * (n + 4) * b * b)
    g1 = (-a * n * (n + 2) * (n - 1)
          + 3 * b * n * (n + 2) * (n - 1) * (b * n * (n - 2) * (n + 3) * (n + 1) * (n + 2) * (n - 1)
                                             - 2 * (n * n + n - 3))
          - n)
    A2 = (a * a * n * (n - 1) * (n + 2) * (n + 1) * (2 * n * n + 2 * n - 3)
          + a * (-3 * b * b * n ** 2 * (2 * n * n + 2 * n - 9) * (2 * n * n + 2 * n - 3) * (n - 1) ** 2 * (n + 2) ** 2 * (n + 1) ** 2
                 + 6 * b * n * (n - 1) * (n + 2) * (n + 1) * (2 * n * n + 2 * n - 5) * (2 * n * n + 2 * n - 3)
                 + (2 * n * n + 2 * n - 3) * (2 * n * n + 2 * n - 1))
          + 9 * b ** 4 * n ** 4 * (n - 2) * (n + 3) * (2 * n * n + 2 * n - 9) * (n + 2) ** 3 * (n - 1) ** 3 * (n + 1) ** 4
          - 36 * b ** 3 * n ** 2 * (2 * n ** 4 + 4 * n ** 3 - 9 * n ** 2 - 11 * n + 6) * (n * n + n - 3) * (n - 1) ** 2 * (n + 2) ** 2 * (n + 1) ** 2
          + 6 * b * b * n * (n - 1) * (n + 2) * (n + 1) * (10 * n ** 6 + 30 * n ** 5 - 35 * n ** 4 - 120 * n ** 3 + 67 * n ** 2 + 132 * n - 72)
          + 12 * b * (n + 2) * (n - 1) * (2 * n * n + 2 * n - 3) * (n * n + n - 1)
          + 2 * n * n + 2 * n - 1)
    A1 = (2 * a * a * n * (n + 2) * (2 * n * n + 4 * n - 3) * (n + 1) ** 2
          + a * (-6 * b * b * n ** 2 * (n + 3) * (n - 1) * (4 * n ** 4 + 16 * n ** 3 + 20 * n ** 2 + 8 * n - 27) * (n + 2) ** 2 * (n + 1) ** 2
                 + 12 * b * n * (n + 2) * (n + 1) ** 2 * (2 * n * n + 4 * n - 3) ** 2
                 + 2 * (2 * n * n + 4 * n - 1) * (2 * n * n + 4 * n + 3))
          + 18 * b ** 4 * n ** 3 * (2 * n ** 4 + 8 * n ** 3 - 5 * n ** 2 - 26 * n + 12) * (n + 3) ** 2 * (n - 1) ** 2 * (n + 2) ** 3 * (n + 1) ** 4
          - 72 * b ** 3 * n ** 2 * (n + 3) * (n - 1) * (2 * n * n + 4 * n - 7) * (n ** 4 + 4 * n ** 3 + 4 * n ** 2 - 3) * (n + 2) ** 2 * (n + 1) ** 2
          + 12 * b * b * n * (n - 1) * (n + 3) * (n + 2) * (10 * n ** 4 + 40 * n ** 3 - n ** 2 - 82 * n + 30) * (n + 1) ** 2
          + b * (72 + 600 * n ** 4 - 192 * n + 288 * n ** 5 + 480 * n ** 3 + 48 * n ** 6)
          + 6 + 8 * n + 4 * n * n)
    A0 = (a * a * n * (n + 3) * (n + 2) * (n + 1) * (2 * n * n + 6 * n + 1)
          + a * (-3 * b * b * n ** 2 * (2 * n * n + 6 * n - 5) * (2 * n * n + 6 * n + 1) * (n + 3) ** 2 * (n + 2) ** 2 * (n + 1) ** 2
                 + 6 * b * n * (n + 3) * (n + 2) * (n + 1) * (2 * n * n + 6 * n - 1) * (2 * n * n + 6 * n + 1)
                 + (2 * n * n + 6 * n + 1) * (2 * n * n + 6 * n + 3))
          + 9 * b ** 4 * n ** 3 * (n - 1) * (n + 4) * (2 * n * n + 6 * n - 5) * (n + 3) ** 3 * (n + 2) ** 4 * (n + 1) ** 4
          - 36 * b ** 3 * n ** 2 * (2 * n ** 4 + 12 * n ** 3 + 15 * n ** 2 - 9 * n - 8) * (n * n + 3 * n - 1) * (n + 3) ** 2 * (n + 2) ** 2 * (n + 1) ** 2
          + 6 * b * b * n * (n + 3) * (n + 2) * (n + 1) * (10 * n ** 6 + 90 * n ** 5 + 265 * n ** 4 + 240 * n ** 3 - 53 * n ** 2 - 24 * n + 12)
          + 12 * b * n * (n + 3) * (n * n + 3 * n + 1) * (2 * n * n + 6 * n + 1)
          + 2 * n * n + 6 * n + 3)
    B1 = (-a * n * (n + 2) * (n + 1)
          + 3 * b * b * n ** 3 * (n - 1) * (n + 2) ** 2 * (n + 1) ** 3
          - 6 * b * n * (n + 2) * (n + 1) * (n * n + n - 1)
          - 2 - n)
    B0 = (-a * n * (n + 2) * (n + 1)
          + 3 * b * b * n ** 2 * (n + 3) * (n + 2) ** 3 * (n + 1) ** 3
          - 6 * b * n * (n + 2) * (n + 1) * (n * n + 3 * n + 1)
          - n)
    return g0, g1, A0, A1, A2, B0, B1


def _paired_step_raw(a, b, n, om):
    g0, g1, A0, A1, A2, B0, B1 = _pair_blocks(a, b, n)
    gam = g0 + g1 * om
    if gam == 0.0 or n == 0:
        raise DegenerateDenominator("degenerate paired step state")
    A = A0 + A1 * om + A2 * om * om
    B = B0 + B1 * om
    a_new = 4.0 * A / (3.0 * ((n + 1) * gam) ** 2)
    b_new = B / (3.0 * gam * (n + 1) ** 2 * (n + 2) * n)
    return a_new, b_new


def step_ab(p: ParamC1Like, n: int, lam: float,
            omega: Optional[float] = None) -> ParamC1:
    """Push the coupling pair across a knot of length ratio ``lam``.

    The raw step is followed by the anisotropic rescale (alpha/lam,
    beta/lam**2) that moves the state into the next subinterval's local
    coordinates.
    """
    a, b = _ab(p)
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("length ratio must be positive")
    if omega is None:
        ra, rb = _plain_step_raw(a, b, n)
    else:
        ra, rb = _paired_step_raw(a, b, n, float(omega))
    return ParamC1(ra / lam, rb / (lam * lam))


def omega_pair_c1(p: ParamC1Like, n: int, lam: float, branch: str = "plus") -> float:
    """Rooting weight pairing an n-node rule with an (n-1)-node successor.

    The pairing condition is quadratic in the rooting weight; ``branch``
    selects which of the two solutions is returned.  Raises
    NegativeDiscriminant when no real solution exists for this state.
    """
    a, b = _ab(p)
    lam = float(lam)
    if branch not in ("plus", "minus"):
        raise ValueError("branch must be 'plus' or 'minus'")
    g0, g1, A0, A1, A2, B0, B1 = _pair_blocks(a, b, n)
    k1 = 3.0 * (n + 1) ** 2
    k2 = 4.0 * n * (n + 2)
    k3 = 6.0 * (n * n + 2 * n - 1)
    k4 = float((n - 1) * (n + 3))
    l2 = lam * lam
    l3 = l2 * lam
    l4 = l2 * l2
    Aq = k1 * l4 * g1 * g1 + k2 * l3 * A2 + k3 * l2 * B1 * g1 - k4 * B1 * B1
    Bq = (2.0 * k1 * l4 * g0 * g1 + k2 * l3 * A1
          + k3 * l2 * (B1 * g0 + B0 * g1) - 2.0 * k4 * B0 * B1)
    Cq = k1 * l4 * g0 * g0 + k2 * l3 * A0 + k3 * l2 * B0 * g0 - k4 * B0 * B0
    if Aq == 0.0:
        if Bq == 0.0:
            raise DegenerateDenominator("degenerate pairing condition")
        return -Cq / Bq
    disc = Bq * Bq - 4.0 * Aq * Cq
    if disc < 0.0:
        raise NegativeDiscriminant(
            f"pairing condition has no real solution (disc={disc:.3e})"
        )
    s = math.sqrt(disc)
    return (-Bq + s) / (2.0 * Aq) if branch == "plus" else (-Bq - s) / (2.0 * Aq)


def bridge_omega_c1(p: ParamC1Like, n: int, beta_target: float) -> float:
    """Rooting weight whose paired step hits ``beta_target`` in the raw beta
    component (the beta part of the step is a Moebius map of the weight)."""
    a, b = _ab(p)
    g0, g1, _, _, _, B0, B1 = _pair_blocks(a, b, n)
    k = 3.0 * (n + 1) ** 2 * (n + 2) * n * float(beta_target)
    den = B1 - k * g1
    if den == 0.0:
        raise DegenerateDenominator("bridge target is unreachable for this state")
    return (k * g0 - B0) / den


# ---------------------------------------------------------------------------
# interior pair matching (even-count closures)
# ---------------------------------------------------------------------------

def _match_a(n, a, b):
    return 9 * n ** 2 * (n + 2) ** 2 * (n + 1) ** 4 * (
        -a * (n + 3) * (n - 1)
        + 3 * b * b * n * (n + 4) * (n - 2) * (n + 2) * (n + 3) ** 2 * (n - 1) ** 2
        - 6 * b * (n + 3) * (n - 1) * (n * n + 2 * n - 4) - 1.0)


def _match_b(n, a, b):
    return 18 * n * (n + 2) * (n + 1) ** 2 * (
        a * (n * n + 2 * n - 1)
        - 3 * b * b * n * (n - 1) * (n + 3) * (n + 2) * (n * n + 2 * n - 4) * (n + 1) ** 2
        + 6 * b * (n * n + 2 * n - 2) * (n * n + 2 * n - 1) + 1.0)


def _match_c(n, a, b):
    return 3 * (a * (n + 1) ** 2 - 3 * b * b * n ** 2 * (n + 2) ** 2 * (n + 1) ** 4
                + 6 * b * n * (n + 2) * (n + 1) ** 2 + 1.0)


def _match_d(n, a, b):
    return 3 * (n + 1) ** 2 * (a * n * (n + 2)
                               - 3 * b * b * n ** 2 * (n + 3) * (n - 1) * (n + 2) ** 2 * (n + 1) ** 2
                               + 6 * b * n * (n + 2) * (n * n + 2 * n - 1) + 1.0)


def middle_pair_params_c1(left: ParamC1Like, right: ParamC1Like, n: int,
                          lam: float) -> Tuple[ParamC1, ParamC1]:
    """Coupling pairs of the two matched interior subintervals.

    ``left``/``right`` are the states the two sweeps arrived with, ``lam``
    the middle length ratio.  Returns (right-mid, left-mid) states; the
    right-mid one closes the left sweep, the left-mid one seeds the
    interior rule of the following subinterval.
    """
    aL, bL = _ab(left)
    aR, bR = _ab(right)
    lam = float(lam)
    A1, B1, C1, D1 = (_match_a(n, aL, bL), _match_b(n, aL, bL),
                      _match_c(n, aL, bL), _match_d(n, aL, bL))
    A2 = _match_a(n, aR, bR)
    B2 = lam ** 2 * _match_b(n, aR, bR)
    C2 = lam ** 4 * _match_c(n, aR, bR)
    D2 = -lam ** 3 * _match_d(n, aR, bR)
    A3 = D2 * A1 - D1 * A2
    B3 = D2 * B1 - D1 * B2
    C3 = D2 * C1 - D1 * C2
    B4 = A2 * B1 - A1 * B2
    C4 = A2 * C1 - A1 * C2
    D4 = A2 * D1 - A1 * D2
    if A3 == 0.0:
        if B3 == 0.0:
            raise DegenerateDenominator("interior pair matching is degenerate")
        b_mid = -C3 / B3
    else:
        disc = B3 * B3 - 4.0 * A3 * C3
        if disc < 0.0:
            raise NegativeDiscriminant(
                f"interior pair matching has no real solution (disc={disc:.3e})"
            )
        b_mid = (-B3 - math.sqrt(disc)) / (2.0 * A3)
    if D4 == 0.0:
        raise DegenerateDenominator("interior pair matching is degenerate")
    a_mid = -(C4 + B4 * b_mid) / D4
    return ParamC1(a_mid, b_mid), ParamC1(-a_mid / lam, b_mid / lam ** 2)


# ---------------------------------------------------------------------------
# independent re-expansion (cross-check oracle)
# ---------------------------------------------------------------------------

def _geg52(n: int, x: float) -> float:
    if n < 0:
        return 0.0
    return eval_derivs(PolyFamily.GEGENBAUER_5_2, n, x)[0]


def gegenbauer_oracle_c1(p, n: int, x: float) -> float:
    """Evaluate the coupled polynomial through its ultraspherical expansion.

    Pass a single (alpha, beta) state for the one-sided polynomial or a
    (left, right) pair of states for the two-sided one.
    """
    x = float(x)
    if (isinstance(p, (tuple, list)) and len(p) == 2
            and all(isinstance(q, ParamC1) or (isinstance(q, (tuple, list)) and len(q) == 2)
                    for q in p)):
        aL, bL = _ab(p[0])
        aR, bR = _ab(p[1])

        def corner_lo(m, a, b):
            return (1.0 + (3 + m + m * m) * a + 6 * (6 + m * m + 2 * m ** 3 + m ** 4) * b
                    - 3 * (m - 3) * (m - 2) * (m - 1) * m * (m + 1) * (m + 2) * (m + 3) * (m + 4) * b * b)

        def corner_hi(m, a, b):
            return 1.0 + m * (m + 1) * (a + 3 * (m - 1) * (m + 2) * b
                                        * (2.0 - (m - 2) * m * (m + 1) * (m + 3) * b))

        def H(m):
            return _middle_scale(m, aL, bL, aR, bR)

        J = ((corner_lo(n, aL, bL) * corner_hi(n, aR, bR)
              + corner_lo(n, aR, bR) * corner_hi(n, aL, bL)) / 2.0
             + 108 * (n - 1) * n * (n + 1) * (n + 2) * (bL - bR) ** 2)
        bsum = bL + bR
        lin_lo = ((aL - aR) * (3 * n * bsum * (n - 1) * (n + 1) * (n + 2) - 2.0)
                  * (3 * n * bsum * (n - 2) * (n - 1) * (n + 1) - 2.0))
        lin_hi = ((aL - aR) * (3 * n * bsum * (n - 1) * (n + 1) * (n + 2) - 2.0)
                  * (3 * n * bsum * (n + 1) * (n + 2) * (n + 3) - 2.0))

        def antisym(k):
            return (bL - bR) * k * k * (
                48.0 - 144 * (k - 2) * (k + 2) * (k * k - 6) * (k - 1) ** 2 * (k + 1) ** 2 * bL * bR
                + 12 * (k - 1) * (k + 1) * (aL + aR)
                - 48 * (k - 1) ** 2 * (k + 1) ** 2 * bsum
                - 9 * (k - 2) * (k + 2) * (k - 1) ** 2 * (k + 1) ** 2
                * (3 * bL * aR + 3 * aL * bR + bL * aL + aR * bR))

        val = (3.0 * _geg52(n, x) * H(n) / ((2 * n + 1) * (2 * n + 3))
               - 6.0 * _geg52(n - 2, x) * J / ((2 * n - 1) * (2 * n + 3))
               + 3.0 * _geg52(n - 4, x) * H(n + 1) / ((2 * n - 1) * (2 * n + 1)))
        val += (3.0 / (4.0 * (2 * n + 1))) * (
            _geg52(n - 1, x) * (lin_lo + antisym(n))
            - _geg52(n - 3, x) * (lin_hi + antisym(n + 1)))
        return val

    a, b = _ab(p)
    E = 1.0 + (n + 1) * (n + 2) * (a + 3 * n * (n + 3) * b
                                   * (2.0 - (n - 1) * (n + 1) * (n + 2) * (n + 4) * b))
    return (6.0 * _geg52(n, x) * _boundary_scale(n, a, b) / ((n + 2) * (2 * n + 3))
            + 6.0 * _geg52(n - 1, x) * E / ((n + 1) * (n + 2))
            + 6.0 * _geg52(n - 2, x) * _boundary_scale(n + 1, a, b) / ((n + 1) * (2 * n + 3)))
