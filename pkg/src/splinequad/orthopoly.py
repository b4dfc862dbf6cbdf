"""Orthogonal polynomial evaluation and a robust real-root finder.

Everything downstream (reference rules, limit rules, the dual-form oracles)
is built from three classical families on [-1, 1]:

* Legendre P_n,
* Jacobi P_n^(a,0) for a in {1, 2},
* Gegenbauer (ultraspherical) C_n^(3/2) and C_n^(5/2).

All of them satisfy a three-term recurrence

    p_k(x) = (A_k x + B_k) p_{k-1}(x) + C_k p_{k-2}(x),

which we differentiate term by term so one pass yields the value together
with the first few derivatives.  That is cheaper and far more stable than
divided differences, and it gives the root finder an analytic derivative.
"""

import enum
from typing import Callable, NamedTuple, Tuple

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from .errors import ConvergenceFailure, RootCountMismatch

__all__ = [
    "PolyFamily",
    "EvalTriple",
    "eval_poly",
    "eval_derivs",
    "normalization_at_one",
    "real_roots",
    "RootCountMismatch",
    "ConvergenceFailure",
]

#: how many derivatives eval_derivs carries (value counts as order 0)
_NDERIV = 4


class PolyFamily(enum.Enum):
    """The polynomial families used by the rule constructions."""

    LEGENDRE = "legendre"
    JACOBI_1_0 = "jacobi_1_0"
    JACOBI_2_0 = "jacobi_2_0"
    GEGENBAUER_3_2 = "gegenbauer_3_2"
    GEGENBAUER_5_2 = "gegenbauer_5_2"


class EvalTriple(NamedTuple):
    """Value and first two derivatives of a polynomial at a point."""

    value: float
    d1: float
    d2: float


def _recurrence_coeffs(family: PolyFamily, k: int) -> Tuple[float, float, float]:
    """(A_k, B_k, C_k) of the three-term recurrence for degree k >= 2."""
    if family is PolyFamily.LEGENDRE:
        return (2.0 * k - 1.0) / k, 0.0, -(k - 1.0) / k
    if family is PolyFamily.JACOBI_1_0 or family is PolyFamily.JACOBI_2_0:
        a = 1.0 if family is PolyFamily.JACOBI_1_0 else 2.0
        den = 2.0 * k * (k + a) * (2.0 * k + a - 2.0)
        A = (2.0 * k + a - 1.0) * (2.0 * k + a) * (2.0 * k + a - 2.0) / den
        B = (2.0 * k + a - 1.0) * a * a / den
        C = -2.0 * (k + a - 1.0) * (k - 1.0) * (2.0 * k + a) / den
        return A, B, C
    # Gegenbauer: store 2*lambda as an integer to stay exact
    lam2 = 3.0 if family is PolyFamily.GEGENBAUER_3_2 else 5.0
    return (2.0 * k - 2.0 + lam2) / k, 0.0, -(k - 2.0 + lam2) / k


def _degree_one(family: PolyFamily, x: float) -> Tuple[float, float]:
    """p_1(x) as (constant term, slope)."""
    if family is PolyFamily.LEGENDRE:
        return 0.0, 1.0
    if family is PolyFamily.JACOBI_1_0:
        return 0.5, 1.5
    if family is PolyFamily.JACOBI_2_0:
        return 1.0, 2.0
    if family is PolyFamily.GEGENBAUER_3_2:
        return 0.0, 3.0
    return 0.0, 5.0


def eval_derivs(family: PolyFamily, n: int, x: float):
    """Evaluate p_n and its first four derivatives at ``x``.

    Returns a 5-tuple (p, p', p'', p''', p'''').  Differentiating the
    recurrence j times gives

        p_k^(j) = (A_k x + B_k) p_{k-1}^(j) + j A_k p_{k-1}^(j-1)
                  + C_k p_{k-2}^(j),

    so the loop carries a short vector of derivatives per degree.
    """
    if n < 0:
        raise ValueError("polynomial degree must be >= 0")
    x = float(x)
    prev = (1.0,) + (0.0,) * _NDERIV  # degree 0
    if n == 0:
        return prev
    b0, b1 = _degree_one(family, x)
    cur = (b0 + b1 * x, b1) + (0.0,) * (_NDERIV - 1)
    for k in range(2, n + 1):
        A, B, C = _recurrence_coeffs(family, k)
        lin = A * x + B
        nxt = [lin * cur[0] + C * prev[0]]
        for j in range(1, _NDERIV + 1):
            nxt.append(lin * cur[j] + j * A * cur[j - 1] + C * prev[j])
        prev, cur = cur, tuple(nxt)
    return cur


def eval_poly(family: PolyFamily, n: int, x: float) -> EvalTriple:
    """Value and first two derivatives of the degree-n member of ``family``."""
    d = eval_derivs(family, n, x)
    return EvalTriple(d[0], d[1], d[2])


def normalization_at_one(family: PolyFamily, n: int) -> float:
    """p_n(1) in the normalization used here (handy as a sanity anchor)."""
    from math import comb

    if family is PolyFamily.LEGENDRE:
        return 1.0
    if family is PolyFamily.JACOBI_1_0:
        return float(comb(n + 1, n))
    if family is PolyFamily.JACOBI_2_0:
        return float(comb(n + 2, n))
    if family is PolyFamily.GEGENBAUER_3_2:
        return float(comb(n + 2, n))
    return float(comb(n + 4, n))


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

#: default bracket: the closed reference interval with a hair of slack so a
#: root sitting exactly on +-1 is not lost to roundoff
DEFAULT_BRACKET = (-1.0 - 1e-10, 1.0 + 1e-10)

_NEWTON_MAX = 80


def real_roots(
    f: Callable[[float], Tuple[float, float]],
    degree: int,
    bracket: Tuple[float, float] = DEFAULT_BRACKET,
) -> np.ndarray:
    """All ``degree`` real roots of a polynomial inside ``bracket``.

    ``f`` maps x to (value, derivative).  The polynomial is reconstructed
    exactly by Chebyshev interpolation at degree+1 points (the callable is a
    polynomial of that degree, so interpolation is not a fit), its roots come
    from the Chebyshev companion matrix, and each kept root is polished with
    Newton using the analytic derivative.

    Raises RootCountMismatch when fewer or more than ``degree`` roots lie in
    the bracket -- for the rule constructions that always means the parameter
    state is outside the existence region, so the caller should treat it as
    data, not retry blindly.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree == 0:
        return np.empty(0)
    lo, hi = float(bracket[0]), float(bracket[1])
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)

    u = _cheb.chebpts1(degree + 1)
    vals = np.array([f(center + half * ui)[0] for ui in u])
    coef = _cheb.chebfit(u, vals, degree)
    roots_u = _cheb.chebroots(coef)

    keep = []
    for r in np.atleast_1d(roots_u):
        if abs(r.imag) > 1e-7:
            continue
        xr = center + half * r.real
        if lo - 1e-12 <= xr <= hi + 1e-12:
            keep.append(xr)
    if len(keep) != degree:
        raise RootCountMismatch(
            f"expected {degree} real roots in [{lo:.6g}, {hi:.6g}], found {len(keep)}"
        )

    polished = []
    for x0 in keep:
        x = x0
        ok = False
        for _ in range(_NEWTON_MAX):
            fx, dfx = f(x)
            if abs(fx) <= 1e-13 * max(1.0, abs(dfx)):
                ok = True
                break
            if dfx == 0.0:
                break
            step = fx / dfx
            x -= step
            if abs(step) <= 4e-16 * max(1.0, abs(x)):
                ok = True
                break
        if not ok:
            fx, dfx = f(x)
            # accept anything that is a root to within a generous residual;
            # refuse to return a point that plainly is not one
            if abs(fx) > 1e-9 * max(1.0, abs(dfx)):
                raise ConvergenceFailure(
                    f"Newton polish stalled at x={x!r} (residual {fx:.3e})"
                )
        polished.append(x)
    polished.sort()
    return np.array(polished)
