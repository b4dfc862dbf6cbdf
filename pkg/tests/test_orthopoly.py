"""Orthogonal-polynomial evaluators and the root finder.

scipy.special is the value oracle; finite differences and the classical
Jacobi derivative identity check the derivative channels; numpy's
Gauss-Legendre nodes check the root finder end to end.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from splinequad.errors import RootCountMismatch
from splinequad.orthopoly import (DEFAULT_BRACKET, PolyFamily, eval_derivs,
                                  eval_poly, normalization_at_one, real_roots)

SCIPY_VALUE = {
    PolyFamily.LEGENDRE: lambda n, x: special.eval_legendre(n, x),
    PolyFamily.JACOBI_1_0: lambda n, x: special.eval_jacobi(n, 1.0, 0.0, x),
    PolyFamily.JACOBI_2_0: lambda n, x: special.eval_jacobi(n, 2.0, 0.0, x),
    PolyFamily.GEGENBAUER_3_2: lambda n, x: special.eval_gegenbauer(n, 1.5, x),
    PolyFamily.GEGENBAUER_5_2: lambda n, x: special.eval_gegenbauer(n, 2.5, x),
}

GRID = np.linspace(-1.0, 1.0, 41)


@pytest.mark.parametrize("family", list(PolyFamily))
def test_values_match_scipy(family):
    for n in range(0, 13):
        ours = np.array([eval_poly(family, n, float(x)).value for x in GRID])
        ref = SCIPY_VALUE[family](n, GRID)
        scale = max(1.0, float(np.max(np.abs(ref))))
        assert np.max(np.abs(ours - ref)) <= 1e-12 * scale


def test_legendre_quadratic_point_values():
    t = eval_poly(PolyFamily.LEGENDRE, 2, 0.5)
    assert t.value == pytest.approx(-0.125, abs=1e-15)
    assert t.d1 == pytest.approx(1.5, abs=1e-15)
    assert t.d2 == pytest.approx(3.0, abs=1e-15)


def test_stated_linear_roots():
    # (3x+1)/2 vanishes at -1/3; 1+2x vanishes at -1/2
    assert eval_poly(PolyFamily.JACOBI_1_0, 1, -1.0 / 3.0).value == pytest.approx(0.0, abs=1e-15)
    assert eval_poly(PolyFamily.JACOBI_2_0, 1, -0.5).value == pytest.approx(0.0, abs=1e-15)


def test_low_degree_derivatives_vanish():
    for family in PolyFamily:
        z = eval_poly(family, 0, 0.3)
        assert z.d1 == 0.0 and z.d2 == 0.0
        one = eval_poly(family, 1, 0.3)
        assert one.d2 == 0.0


@pytest.mark.parametrize("family", list(PolyFamily))
def test_first_derivative_against_finite_difference(family):
    h = 1e-6
    for n in range(1, 13):
        for x in np.linspace(-0.9, 0.9, 7):
            fd = (eval_poly(family, n, x + h).value
                  - eval_poly(family, n, x - h).value) / (2.0 * h)
            d1 = eval_poly(family, n, float(x)).d1
            assert d1 == pytest.approx(fd, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("family", list(PolyFamily))
def test_second_derivative_against_finite_difference(family):
    h = 1e-6
    for n in range(2, 13):
        for x in np.linspace(-0.9, 0.9, 5):
            fd = (eval_poly(family, n, x + h).d1
                  - eval_poly(family, n, x - h).d1) / (2.0 * h)
            d2 = eval_poly(family, n, float(x)).d2
            assert d2 == pytest.approx(fd, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("a", [1, 2])
def test_jacobi_derivative_identity(a):
    """d/dx P_n^(a,0) = (n+a+1)/2 * P_{n-1}^(a+1,1), straight from scipy."""
    family = PolyFamily.JACOBI_1_0 if a == 1 else PolyFamily.JACOBI_2_0
    for n in range(1, 11):
        for x in np.linspace(-0.95, 0.95, 9):
            ref = 0.5 * (n + a + 1) * special.eval_jacobi(n - 1, a + 1.0, 1.0, x)
            got = eval_poly(family, n, float(x)).d1
            assert got == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_normalizations_at_one():
    for n in range(0, 11):
        assert normalization_at_one(PolyFamily.LEGENDRE, n) == 1.0
        assert normalization_at_one(PolyFamily.JACOBI_1_0, n) == math.comb(n + 1, n)
        assert normalization_at_one(PolyFamily.JACOBI_2_0, n) == math.comb(n + 2, n)
        assert normalization_at_one(PolyFamily.GEGENBAUER_3_2, n) == math.comb(n + 2, n)
        assert normalization_at_one(PolyFamily.GEGENBAUER_5_2, n) == math.comb(n + 4, n)


def test_third_and_fourth_derivative_channels():
    """eval_derivs carries 4 derivatives; check them on a known cubic.

    P_3 = (5x^3-3x)/2, so d3 = 15 and d4 = 0 everywhere.
    """
    for x in (-0.7, 0.0, 0.4):
        v, d1, d2, d3, d4 = eval_derivs(PolyFamily.LEGENDRE, 3, x)
        assert v == pytest.approx((5 * x**3 - 3 * x) / 2, abs=1e-14)
        assert d3 == pytest.approx(15.0, abs=1e-12)
        assert d4 == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_real_roots_reproduce_gauss_legendre(n):
    f = lambda x: eval_poly(PolyFamily.LEGENDRE, n, x)[:2]
    roots = real_roots(f, n)
    ref, _ = np.polynomial.legendre.leggauss(n)
    assert np.max(np.abs(np.array(roots) - ref)) <= 1e-13


def test_real_roots_linear_cases():
    f10 = lambda x: eval_poly(PolyFamily.JACOBI_1_0, 1, x)[:2]
    assert real_roots(f10, 1)[0] == pytest.approx(-1.0 / 3.0, abs=1e-14)
    f20 = lambda x: eval_poly(PolyFamily.JACOBI_2_0, 1, x)[:2]
    assert real_roots(f20, 1)[0] == pytest.approx(-0.5, abs=1e-14)


def test_real_roots_detects_missing_roots():
    no_real = lambda x: (x * x + 1.0, 2.0 * x)
    with pytest.raises(RootCountMismatch):
        real_roots(no_real, 2)


def test_real_roots_respects_bracket():
    # (x-2)(x+2) has both roots outside the default bracket
    outside = lambda x: (x * x - 4.0, 2.0 * x)
    with pytest.raises(RootCountMismatch):
        real_roots(outside, 2)
    both = real_roots(outside, 2, bracket=(-3.0, 3.0))
    assert both == pytest.approx([-2.0, 2.0], abs=1e-13)


@settings(max_examples=25, deadline=None)
@given(family=st.sampled_from(list(PolyFamily)), n=st.integers(2, 10))
def test_consecutive_degrees_interlace(family, n):
    hi = real_roots(lambda x: eval_poly(family, n, x)[:2], n)
    lo = real_roots(lambda x: eval_poly(family, n - 1, x)[:2], n - 1)
    for k in range(n - 1):
        assert hi[k] < lo[k] < hi[k + 1]
