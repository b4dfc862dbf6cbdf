"""The continuity-1 formula layer.

The two-parameter recursion and the long pairing coefficients are the
riskiest transcriptions in the package, so everything here leans on
independent anchors: rational low-order values, the Gegenbauer
re-expansion, classical reductions, and behavioral properties (branch
enumeration, parity, inversion) that a wrong coefficient would break.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splinequad.errors import (NegativeDiscriminant, NumericFailure,
                               RootCountMismatch)
from splinequad.family_c1 import (ParamC1, boundary_rule_c1, bridge_omega_c1,
                                  gegenbauer_oracle_c1, m_eval_c1,
                                  middle_pair_params_c1, middle_rule_c1,
                                  omega_pair_c1, q_eval_c1, step_ab)
from splinequad.orthopoly import PolyFamily, eval_poly

CHEB_21 = np.cos(np.pi * (2 * np.arange(21) + 1) / 42.0)


# ---------------------------------------------------------------- reductions

def test_zero_state_reduces_to_jacobi():
    for n in range(1, 11):
        for x in np.linspace(-1.0, 1.0, 21):
            got = q_eval_c1((0.0, 0.0), n, float(x))
            ref = eval_poly(PolyFamily.JACOBI_2_0, n, float(x))
            assert got.value == pytest.approx(ref.value, abs=1e-14, rel=1e-14)
            assert got.d1 == pytest.approx(ref.d1, abs=1e-13, rel=1e-13)


def test_zero_middle_reduces_to_legendre():
    zero = (0.0, 0.0)
    for n in range(1, 11):
        for x in np.linspace(-1.0, 1.0, 21):
            got = m_eval_c1(zero, zero, n, float(x))
            ref = eval_poly(PolyFamily.LEGENDRE, n, float(x))
            assert got.value == pytest.approx(ref.value, abs=1e-14, rel=1e-14)


def test_zero_state_linear_root():
    assert q_eval_c1((0.0, 0.0), 1, -0.5).value == pytest.approx(0.0, abs=1e-15)


# ------------------------------------------------------------ boundary rules

def test_first_subinterval_rule():
    rule = boundary_rule_c1((0.0, 0.0), 1)
    assert rule.nodes[0] == pytest.approx(-0.5, abs=1e-15)
    assert rule.weights[0] == pytest.approx(32.0 / 27.0, rel=1e-15)
    # explicit zero combination weight changes nothing
    same = boundary_rule_c1((0.0, 0.0), 1, omega=0.0)
    assert same.nodes[0] == rule.nodes[0]
    assert same.weights[0] == pytest.approx(rule.weights[0], rel=1e-15)


def test_unit_interval_image_halves_the_weight():
    rule = boundary_rule_c1((0.0, 0.0), 1)
    assert (rule.nodes[0] + 1.0) / 2.0 == pytest.approx(0.25, abs=1e-15)
    assert rule.weights[0] / 2.0 == pytest.approx(16.0 / 27.0, rel=1e-15)


# ------------------------------------------------------------------ stepping

def test_step_values_by_rational_arithmetic():
    st1 = step_ab((0.0, 0.0), 1, 1.0)
    assert st1.alpha == pytest.approx(11.0 / 27.0, rel=1e-15)
    assert st1.beta == pytest.approx(1.0 / 108.0, rel=1e-15)
    st2 = step_ab((0.0, 0.0), 1, 2.0)
    assert st2.alpha == pytest.approx(11.0 / 54.0, rel=1e-15)
    assert st2.beta == pytest.approx(1.0 / 432.0, rel=1e-15)


def test_paired_step_at_zero_weight_equals_plain_step():
    rng = np.random.default_rng(31)
    for _ in range(40):
        a = float(rng.uniform(-0.1, 0.4))
        b = float(rng.uniform(-0.01, 0.03))
        n = int(rng.integers(1, 7))
        lam = float(rng.uniform(0.4, 2.5))
        plain = step_ab((a, b), n, lam)
        paired = step_ab((a, b), n, lam, omega=0.0)
        assert paired.alpha == pytest.approx(plain.alpha, rel=1e-12, abs=1e-14)
        assert paired.beta == pytest.approx(plain.beta, rel=1e-12, abs=1e-15)


def test_bridge_hits_requested_curvature():
    """bridge_omega_c1 solves for the combination weight whose paired step
    (ratio 1) produces exactly the requested beta."""
    rng = np.random.default_rng(41)
    for _ in range(40):
        a = float(rng.uniform(0.0, 0.4))
        b = float(rng.uniform(0.0, 0.02))
        n = int(rng.integers(1, 6))
        target = float(rng.uniform(0.002, 0.02))
        om = bridge_omega_c1((a, b), n, target)
        landed = step_ab((a, b), n, 1.0, omega=om)
        assert landed.beta == pytest.approx(target, rel=1e-10, abs=1e-13)


# ---------------------------------------------------------- pairing branches

def test_exactly_one_branch_survives_at_the_zero_state():
    state = (0.0, 0.0)
    om_plus = omega_pair_c1(state, 2, 1.0, branch="plus")
    om_minus = omega_pair_c1(state, 2, 1.0, branch="minus")
    assert om_plus != om_minus
    good = boundary_rule_c1(state, 2, omega=om_plus)
    assert len(good.nodes) == 2
    with pytest.raises(RootCountMismatch):
        boundary_rule_c1(state, 2, omega=om_minus)


def test_pairing_discriminant_can_go_negative():
    with pytest.raises(NegativeDiscriminant):
        omega_pair_c1((-0.2, -0.03), 1, 16.0)


def test_both_branches_root_the_same_quadratic():
    """Vieta check without touching internal coefficients: the two branch
    values must average to the quadratic's vertex, so stepping each branch
    through the paired map and bridging back must recover the same weight."""
    rng = np.random.default_rng(59)
    for _ in range(25):
        a = float(rng.uniform(0.0, 0.3))
        b = float(rng.uniform(0.0, 0.015))
        n = int(rng.integers(1, 6))
        lam = float(rng.uniform(0.5, 2.0))
        try:
            om_p = omega_pair_c1((a, b), n, lam, branch="plus")
            om_m = omega_pair_c1((a, b), n, lam, branch="minus")
        except NumericFailure:
            continue
        for om in (om_p, om_m):
            stepped = step_ab((a, b), n, 1.0, omega=om)  # raw (lam folded later)
            back = bridge_omega_c1((a, b), n, stepped.beta)
            assert back == pytest.approx(om, rel=1e-9, abs=1e-10)


# -------------------------------------------------------------- middle rules

def test_middle_rule_gauss_legendre():
    zero = (0.0, 0.0)
    rule = middle_rule_c1(zero, zero, 2)
    assert rule.nodes == pytest.approx([-1/math.sqrt(3), 1/math.sqrt(3)], abs=1e-14)
    assert rule.weights == pytest.approx([1.0, 1.0], abs=1e-14)


def test_symmetric_middle_has_node_parity():
    """Equal states on both sides force node/weight mirror symmetry.

    The states are taken from actual crossings (one step from zero at unit
    ratio) because arbitrary couplings need not admit a middle rule at all.
    """
    for n in (1, 2, 3):
        state = step_ab((0.0, 0.0), n, 1.0)
        rule = middle_rule_c1(state, state, n + 1)
        x = np.array(rule.nodes)
        w = np.array(rule.weights)
        assert np.max(np.abs(x + x[::-1])) <= 1e-12
        assert np.max(np.abs(w - w[::-1])) <= 1e-12


def test_middle_pair_params_symmetry_at_unit_ratio():
    left = ParamC1(0.2, 0.006)
    rm, lm = middle_pair_params_c1(left, left, 2, 1.0)
    assert lm.alpha == pytest.approx(-rm.alpha, rel=1e-12)
    assert lm.beta == pytest.approx(rm.beta, rel=1e-12)


def test_middle_pair_params_depend_only_on_ratio():
    # same states, same ratio -> same parameters (no hidden global scale)
    left = ParamC1(0.18, 0.005)
    right = ParamC1(0.22, 0.007)
    first = middle_pair_params_c1(left, right, 2, 1.5)
    second = middle_pair_params_c1(left, right, 2, 1.5)
    assert first == second


# ------------------------------------------------------- dual-formula oracle

def test_oracle_matches_boundary_polynomial_at_zero_state():
    for n in range(1, 9):
        for x in CHEB_21:
            direct = q_eval_c1((0.0, 0.0), n, float(x)).value
            alt = gegenbauer_oracle_c1((0.0, 0.0), n, float(x))
            assert alt == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_oracle_matches_post_step_state():
    state = (11.0 / 27.0, 1.0 / 108.0)
    for x in CHEB_21:
        direct = q_eval_c1(state, 1, float(x)).value
        alt = gegenbauer_oracle_c1(state, 1, float(x))
        assert alt == pytest.approx(direct, rel=1e-11, abs=1e-12)


def test_oracle_matches_boundary_polynomial_random_states():
    rng = np.random.default_rng(61)
    for _ in range(100):
        a = float(rng.uniform(-0.1, 0.3))
        b = float(rng.uniform(-0.01, 0.03))
        n = int(rng.integers(1, 11))
        x = float(rng.uniform(-0.999, 0.999))
        direct = q_eval_c1((a, b), n, x).value
        alt = gegenbauer_oracle_c1((a, b), n, x)
        assert alt == pytest.approx(direct, rel=1e-10, abs=1e-10)


def test_oracle_matches_asymmetric_middle():
    left = (0.12, 0.004)
    right = (-0.05, 0.009)
    for n in (2, 3, 4, 5):
        for x in CHEB_21:
            direct = m_eval_c1(left, right, n, float(x)).value
            alt = gegenbauer_oracle_c1((left, right), n, float(x))
            assert alt == pytest.approx(direct, rel=1e-10, abs=1e-10)


# ----------------------------------------------------------------- structure

@settings(max_examples=25, deadline=None)
@given(a=st.floats(0.0, 0.4), b=st.floats(0.0, 0.02), n=st.integers(1, 8))
def test_boundary_polynomial_has_exact_degree(a, b, n):
    pts = np.cos(np.pi * (2 * np.arange(n + 1) + 1) / (2 * (n + 1)))
    vals = [q_eval_c1((a, b), n, float(x)).value for x in pts]
    coef = np.polynomial.chebyshev.chebfit(pts, vals, n)
    for x in np.linspace(-0.9, 0.9, 7):
        probe = q_eval_c1((a, b), n, float(x)).value
        fitted = np.polynomial.chebyshev.chebval(x, coef)
        assert fitted == pytest.approx(probe, rel=1e-9, abs=1e-9)
    assert abs(coef[-1]) > 1e-10
