"""The continuity-0 formula layer.

Oracles, in order of authority: exact rational arithmetic on the stated
low-order cases, the independent Gegenbauer re-expansion (a structurally
different formula for the same polynomials), and classical reductions at
the zero state.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splinequad.errors import DegenerateDenominator
from splinequad.family_c0 import (ParamC0, boundary_rule_c0, bridge_omega_c0,
                                  gegenbauer_oracle_c0, m_eval_c0,
                                  middle_pair_params_c0, middle_rule_c0,
                                  omega_pair_c0, q_eval_c0, step_alpha)
from splinequad.orthopoly import PolyFamily, eval_poly, real_roots

CHEB_21 = np.cos(np.pi * (2 * np.arange(21) + 1) / 42.0)


# ---------------------------------------------------------------- reductions

def test_zero_state_reduces_to_jacobi():
    for n in range(1, 11):
        for x in np.linspace(-1.0, 1.0, 21):
            got = q_eval_c0(0.0, n, float(x))
            ref = eval_poly(PolyFamily.JACOBI_1_0, n, float(x))
            assert got.value == pytest.approx(ref.value, abs=1e-14, rel=1e-14)
            assert got.d1 == pytest.approx(ref.d1, abs=1e-13, rel=1e-13)


def test_zero_pair_reduces_to_legendre():
    for n in range(1, 11):
        for x in np.linspace(-1.0, 1.0, 21):
            got = m_eval_c0(0.0, 0.0, n, float(x))
            ref = eval_poly(PolyFamily.LEGENDRE, n, float(x))
            assert got.value == pytest.approx(ref.value, abs=1e-14, rel=1e-14)


def test_zero_state_linear_root():
    assert q_eval_c0(0.0, 1, -1.0 / 3.0).value == pytest.approx(0.0, abs=1e-15)


# ------------------------------------------------------------ boundary rules

def test_first_subinterval_single_node():
    rule = boundary_rule_c0(0.0, 1)
    assert rule.nodes[0] == pytest.approx(-1.0 / 3.0, abs=1e-14)
    assert rule.weights[0] == pytest.approx(1.5, abs=1e-14)


def test_first_subinterval_pair_matches_surd_values():
    """Two nodes on the unit interval with the lambda=2 pairing weight.

    The pairing weight for the zero state at n=2, ratio 2 is -(2+6)/(3+4);
    mapping the resulting reference rule onto [0,1] must land on
    4/7 -/+ sqrt(22)/14 with weights 2/3 -/+ sqrt(22)/44.
    """
    om = omega_pair_c0(0.0, 2, 2.0)
    assert om == pytest.approx(-8.0 / 7.0, abs=1e-15)
    rule = boundary_rule_c0(0.0, 2, omega=om)
    x01 = (np.array(rule.nodes) + 1.0) / 2.0
    w01 = np.array(rule.weights) / 2.0
    s22 = math.sqrt(22.0)
    assert x01 == pytest.approx([4/7 - s22/14, 4/7 + s22/14], abs=1e-14)
    assert w01 == pytest.approx([2/3 - s22/44, 2/3 + s22/44], abs=1e-14)


def test_rooted_combination_moves_the_node():
    # Q_1 - Q_0 = (3x-1)/2 at the zero state
    rule = boundary_rule_c0(0.0, 1, omega=-1.0)
    assert rule.nodes[0] == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_weight_blows_up_when_a_node_reaches_one():
    # choose the combination weight so the rooted polynomial vanishes at +1
    om = -3.0 / 2.0  # -Q_2(1)/Q_1(1) = -3/2 at the zero state
    with pytest.raises(DegenerateDenominator):
        boundary_rule_c0(0.0, 2, omega=om)


# ------------------------------------------------------------------ stepping

def test_step_values_by_rational_arithmetic():
    assert step_alpha(0.0, 1, 1.0).alpha == pytest.approx(0.25, abs=1e-16)
    assert step_alpha(0.0, 1, 2.0).alpha == pytest.approx(0.125, abs=1e-16)
    # the paired step with weight 0 is the plain step
    assert step_alpha(0.0, 1, 1.0, omega=0.0).alpha == pytest.approx(0.25, abs=1e-16)


def test_paired_step_at_zero_weight_equals_plain_step():
    rng = np.random.default_rng(5)
    for _ in range(40):
        a = float(rng.uniform(-0.2, 0.5))
        n = int(rng.integers(1, 8))
        lam = float(rng.uniform(0.3, 3.0))
        plain = step_alpha(a, n, lam).alpha
        paired = step_alpha(a, n, lam, omega=0.0).alpha
        assert paired == pytest.approx(plain, rel=1e-14, abs=1e-15)


def test_pairing_weight_examples():
    for n in range(1, 7):
        assert omega_pair_c0(0.0, n, 1.0) == pytest.approx(-1.0, abs=1e-15)
    assert omega_pair_c0(0.0, 1, 2.0) == pytest.approx(-1.25, abs=1e-15)
    assert omega_pair_c0(0.25, 1, 1.0) == pytest.approx(-11.0 / 7.0, abs=1e-15)


def test_pairing_weight_degenerate_state():
    # n=1: denominator 2(1+a) + lam vanishes at a=-2, lam=2
    with pytest.raises(DegenerateDenominator):
        omega_pair_c0(-2.0, 1, 2.0)


def test_bridge_inverts_the_paired_step():
    """bridge_omega_c0 must produce the weight whose paired step (at ratio 1)
    lands exactly on the requested raw parameter."""
    rng = np.random.default_rng(17)
    for _ in range(40):
        a = float(rng.uniform(-0.2, 0.5))
        n = int(rng.integers(1, 7))
        target = float(rng.uniform(-0.3, 0.6))
        try:
            om = bridge_omega_c0(a, n, target)
        except DegenerateDenominator:
            continue
        landed = step_alpha(a, n, 1.0, omega=om).alpha
        assert landed == pytest.approx(target, rel=1e-11, abs=1e-12)


# -------------------------------------------------------------- middle rules

def test_middle_rule_gauss_legendre_cases():
    two = middle_rule_c0(0.0, 0.0, 2)
    assert two.nodes == pytest.approx([-1/math.sqrt(3), 1/math.sqrt(3)], abs=1e-14)
    assert two.weights == pytest.approx([1.0, 1.0], abs=1e-14)
    one = middle_rule_c0(0.0, 0.0, 1)
    assert one.nodes[0] == pytest.approx(0.0, abs=1e-14)
    assert one.weights[0] == pytest.approx(2.0, abs=1e-14)


def test_middle_pair_parameter_split():
    assert middle_pair_params_c0(0.0, 1.0) == (0.0, 0.0)
    rm, lm = middle_pair_params_c0(0.3, 1.0)
    assert (rm, lm) == pytest.approx((0.3, -0.3))
    rm, lm = middle_pair_params_c0(0.3, 2.0)
    assert (rm, lm) == pytest.approx((0.3, -0.15))


def test_symmetric_middle_is_symmetric():
    rule = middle_rule_c0(0.2, 0.2, 4)
    x = np.array(rule.nodes)
    w = np.array(rule.weights)
    assert np.max(np.abs(x + x[::-1])) <= 1e-12
    assert np.max(np.abs(w - w[::-1])) <= 1e-12


# ------------------------------------------------------- dual-formula oracle

def test_oracle_matches_boundary_polynomial_at_zero_state():
    for n in range(1, 11):
        for x in CHEB_21:
            direct = q_eval_c0(0.0, n, float(x)).value
            alt = gegenbauer_oracle_c0(0.0, n, float(x))
            assert alt == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_oracle_matches_boundary_polynomial_random_states():
    rng = np.random.default_rng(23)
    for _ in range(100):
        a = float(rng.uniform(-0.2, 0.5))
        n = int(rng.integers(1, 11))
        x = float(rng.uniform(-0.999, 0.999))
        direct = q_eval_c0(a, n, x).value
        alt = gegenbauer_oracle_c0(a, n, x)
        assert alt == pytest.approx(direct, rel=1e-11, abs=1e-11)


def test_oracle_matches_middle_polynomial():
    for n in (2, 3, 4):
        for x in CHEB_21:
            direct = m_eval_c0(0.25, 0.25, n, float(x)).value
            alt = gegenbauer_oracle_c0((0.25, 0.25), n, float(x))
            assert alt == pytest.approx(direct, rel=1e-11, abs=1e-11)
    # asymmetric states exercise the skew term
    for x in CHEB_21:
        direct = m_eval_c0(0.3, -0.1, 3, float(x)).value
        alt = gegenbauer_oracle_c0((0.3, -0.1), 3, float(x))
        assert alt == pytest.approx(direct, rel=1e-11, abs=1e-11)


# ----------------------------------------------------------------- structure

@settings(max_examples=25, deadline=None)
@given(a=st.floats(-0.2, 0.5), n=st.integers(1, 9))
def test_boundary_polynomial_has_exact_degree(a, n):
    pts = np.cos(np.pi * (2 * np.arange(n + 1) + 1) / (2 * (n + 1)))
    vals = [q_eval_c0(a, n, float(x)).value for x in pts]
    coef = np.polynomial.chebyshev.chebfit(pts, vals, n)
    # interpolant reproduces fresh samples -> degree <= n
    for x in np.linspace(-0.9, 0.9, 7):
        probe = q_eval_c0(a, n, float(x)).value
        fitted = np.polynomial.chebyshev.chebval(x, coef)
        assert fitted == pytest.approx(probe, rel=1e-9, abs=1e-9)
    # nonzero leading coefficient -> degree exactly n
    assert abs(coef[-1]) > 1e-10


@settings(max_examples=25, deadline=None)
@given(a=st.floats(0.0, 0.5), n=st.integers(2, 9))
def test_rooted_polynomials_interlace(a, n):
    """Sweep states are nonnegative (the step map from 0 stays positive);
    negative couplings can push roots past -1, so they are out of scope."""
    hi = real_roots(lambda x: q_eval_c0(a, n, x)[:2], n)
    lo = real_roots(lambda x: q_eval_c0(a, n - 1, x)[:2], n - 1)
    for k in range(n - 1):
        assert hi[k] < lo[k] < hi[k + 1]
