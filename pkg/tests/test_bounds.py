"""Every bound against hand values, oracles, and ordering properties."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specbound import (
    BadExponent,
    NonCommuting,
    as_matrix,
    best_bound,
    bound_pair_holder,
    bound_pair_mixed,
    bound_pair_norm,
    bound_pair_sq,
    bound_pair_triple,
    bound_pm_mixed,
    bound_pm_quadratic,
    bound_product_chain,
    bound_product_half,
    bound_single,
    eval_matrix_series,
    gen_commuting_pair,
    lookup,
    reverse_holder_gap,
    spectral_radius,
    true_function_radius,
)
from specbound.harness import InstanceSpec

TOL = 1e-10

EXP = lookup("exp").series
GEO = lookup("geometric").series
LOG = lookup("log-resolvent").series

SHIFT = as_matrix([[0, 1], [0, 0]])
SHIFT_T = as_matrix([[0, 0], [1, 0]])


def commuting_pair(seed, n=4, family="commuting-polynomial-pair", target=0.7):
    return gen_commuting_pair(
        InstanceSpec(seed=seed, family=family, dim=n, norm_target=target)
    )


def oracle_with_slack(f, T):
    cert = eval_matrix_series(f, T, TOL)
    oracle = spectral_radius(cert.value)
    return oracle, 1e-8 * max(1.0, oracle) + cert.remainder_bound


# ---------------------------------------------------------------------------
# Single operator
# ---------------------------------------------------------------------------


def test_single_zero_matrix_exp():
    b = bound_single(EXP, np.zeros((2, 2)))
    assert b.value == pytest.approx(1.0, abs=1e-12)
    assert b.available and b.target == "f(T)"


def test_single_nilpotent_geometric_equality():
    T = as_matrix([[0, 0.5], [0, 0]])
    b = bound_single(GEO, T)
    oracle = true_function_radius(GEO, T, TOL)
    assert b.value == pytest.approx(1.0, abs=1e-12)
    assert oracle == pytest.approx(1.0, abs=1e-12)


def test_single_nonnormal_with_placed_radius():
    # triangular, r(T) = 0.9 but a much larger norm
    T = as_matrix([[0.9, 1.5], [0, 0.3]])
    b = bound_single(EXP, T)
    assert b.value == pytest.approx(math.exp(0.9), abs=1e-9)
    oracle, slack = oracle_with_slack(EXP, T)
    assert b.value >= oracle - slack


def test_single_unavailable_outside_disk():
    b = bound_single(GEO, np.diag([1.2, 0.5]))
    assert not b.available
    assert "||T|| < R" in b.reason


def test_single_scalar_reduction_is_equality():
    # 1x1 nonnegative matrices with a nonnegative series reduce to the
    # scalar identity f_a(a) = r(f(a))
    for a in (0.0, 0.3, 0.8):
        T = as_matrix([[a]])
        b = bound_single(GEO, T)
        oracle, _ = oracle_with_slack(GEO, T)
        assert b.value == pytest.approx(oracle, abs=3 * TOL)


# ---------------------------------------------------------------------------
# Hölder pair bounds
# ---------------------------------------------------------------------------


def test_holder_rejects_bad_exponent():
    A, B = np.diag([0.5, 0.5]), np.diag([0.5, 0.5])
    with pytest.raises(BadExponent):
        bound_pair_holder(EXP, A, B, 1.0)


def test_holder_rejects_noncommuting():
    with pytest.raises(NonCommuting):
        bound_pair_holder(EXP, SHIFT, SHIFT_T, 2.0)


def test_holder_scalar_case_p2():
    A = np.diag([0.5, 0.5]).astype(complex)
    geo, ratio = bound_pair_holder(EXP, A, A, 2.0)
    # f_a(0.25)^(1/2) * f_a(0.25)^(1/2) = e^0.25
    assert geo.value == pytest.approx(math.exp(0.25), abs=1e-9)
    oracle = true_function_radius(EXP, A @ A, TOL)
    assert oracle == pytest.approx(math.exp(0.25), abs=1e-9)
    assert ratio.available


def test_holder_zero_factor():
    Z = np.zeros((3, 3))
    B = np.diag([0.5, 0.4, 0.1]).astype(complex)
    geo, _ = bound_pair_holder(EXP, Z, B, 2.0)
    # f_a(0)^(1/2) f_a(r(B)^2)^(1/2) >= |a_0| = oracle
    assert geo.value == pytest.approx(math.exp(0.125), abs=1e-9)
    assert geo.value >= 1.0


def test_holder_ratio_denominator_vanishes():
    # constant-term-free series with r(A) = r(B) = 0
    N = as_matrix([[0, 0.5], [0, 0]])
    geo, ratio = bound_pair_holder(LOG, N, N, 2.0)
    assert geo.available
    assert not ratio.available
    assert ratio.reason == "denominator vanishes"


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_holder_soundness_random_pairs(p):
    for seed in range(12):
        A, B = commuting_pair(seed)
        geo, ratio = bound_pair_holder(GEO, A, B, p)
        oracle, slack = oracle_with_slack(GEO, A @ B)
        for b in (geo, ratio):
            if b.available:
                assert b.value >= oracle - slack, (seed, p, b.name)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_holder_exp_closed_forms(p):
    # for the exponential the two forms reduce to
    # exp(r(A)^p/p + r(B)^q/q) and exp(r(A)^p + r(B)^q - r(A)^(p-1) r(B)^(q-1))
    A, B = commuting_pair(23)
    rA, rB = spectral_radius(A), spectral_radius(B)
    q = p / (p - 1.0)
    geo, ratio = bound_pair_holder(EXP, A, B, p)
    assert geo.value == pytest.approx(
        math.exp(rA**p / p + rB**q / q), rel=1e-9
    )
    assert ratio.value == pytest.approx(
        math.exp(rA**p + rB**q - rA ** (p - 1) * rB ** (q - 1)), rel=1e-9
    )


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_holder_geometric_closed_forms(p):
    # for the geometric companion: (1-r(A)^p)^(-1/p) (1-r(B)^q)^(-1/q) and
    # (1 - r(A)^(p-1) r(B)^(q-1)) / ((1-r(A)^p)(1-r(B)^q))
    A, B = commuting_pair(29, target=0.6)
    rA, rB = spectral_radius(A), spectral_radius(B)
    q = p / (p - 1.0)
    geo, ratio = bound_pair_holder(GEO, A, B, p)
    assert geo.value == pytest.approx(
        (1 - rA**p) ** (-1 / p) * (1 - rB**q) ** (-1 / q), rel=1e-9
    )
    assert ratio.value == pytest.approx(
        (1 - rA ** (p - 1) * rB ** (q - 1)) / ((1 - rA**p) * (1 - rB**q)),
        rel=1e-9,
    )


def test_pair_squares_matches_holder_at_p2():
    A, B = commuting_pair(7)
    sq = bound_pair_sq(GEO, A, B)
    geo, _ = bound_pair_holder(GEO, A, B, 2.0)
    assert sq.value == pytest.approx(geo.value, rel=1e-12)


def test_pair_squares_zero_pair():
    Z = np.zeros((2, 2))
    assert bound_pair_sq(EXP, Z, Z).value == pytest.approx(1.0, abs=1e-12)


def test_pair_squares_exp_closed_form():
    A, B = commuting_pair(19)
    rA, rB = spectral_radius(A), spectral_radius(B)
    b = bound_pair_sq(EXP, A, B)
    assert b.value == pytest.approx(
        math.exp((rA**2 + rB**2) / 2.0), rel=1e-9
    )
    oracle, slack = oracle_with_slack(EXP, A @ B)
    assert b.value >= oracle - slack


def test_pair_squares_frozen_example():
    A = np.diag([0.6, 0.6]).astype(complex)
    B = np.diag([0.5, 0.5]).astype(complex)
    b = bound_pair_sq(GEO, A, B)
    assert b.value == pytest.approx(1.4433756729740643, abs=1e-10)
    oracle = true_function_radius(GEO, A @ B, TOL)
    assert oracle == pytest.approx(1.0 / 0.7, abs=1e-9)
    assert b.value >= oracle


# ---------------------------------------------------------------------------
# Norm-averaged pair bounds
# ---------------------------------------------------------------------------


def test_norm_split_zero_pair():
    Z = np.zeros((2, 2))
    first, second = bound_pair_norm(EXP, Z, Z)
    assert first.value == pytest.approx(1.0, abs=1e-12)
    assert second.value == pytest.approx(1.0, abs=1e-12)


def test_norm_split_diagonal_equality():
    A = np.diag([0.7, 0.7]).astype(complex)
    first, _ = bound_pair_norm(GEO, A, A)
    assert first.value == pytest.approx(1.0 / 0.51, abs=1e-9)
    oracle = true_function_radius(GEO, A @ A, TOL)
    assert first.value == pytest.approx(oracle, abs=1e-8)


def test_norm_split_chain_order_and_soundness():
    for seed in range(12):
        A, B = commuting_pair(seed + 50)
        first, second = bound_pair_norm(GEO, A, B)
        assert first.value <= second.value + 1e-10 * max(1.0, second.value)
        oracle, slack = oracle_with_slack(GEO, A @ B)
        assert first.value >= oracle - slack


def test_mixed_split_zero_pair():
    Z = np.zeros((2, 2))
    first, second = bound_pair_mixed(EXP, Z, Z)
    assert first.value == pytest.approx(1.0, abs=1e-12)
    assert second.value == pytest.approx(1.0, abs=1e-12)


def test_mixed_split_diagonal_scalar_symmetry():
    c = 0.6
    A = np.diag([c, c]).astype(complex)
    first, _ = bound_pair_mixed(GEO, A, A)
    assert first.value == pytest.approx(1.0 / (1 - c * c), abs=1e-9)


def test_mixed_split_chain_order_and_soundness():
    for seed in range(12):
        A, B = commuting_pair(seed + 80)
        first, second = bound_pair_mixed(EXP, A, B, TOL)
        assert first.value <= second.value + 1e-10 * max(1.0, second.value)
        oracle, slack = oracle_with_slack(EXP, A @ B)
        assert first.value >= oracle - slack


def test_triple_split_zero_pair():
    Z = np.zeros((2, 2))
    first, second = bound_pair_triple(EXP, Z, Z)
    assert first.value == pytest.approx(1.0, abs=1e-12)
    assert second.value == pytest.approx(1.0, abs=1e-12)


def test_triple_split_diagonal_branches_agree():
    c = 0.5
    A = np.diag([c, c]).astype(complex)
    first, _ = bound_pair_triple(GEO, A, A)
    assert first.value == pytest.approx(1.0 / (1 - c * c), abs=1e-9)
    assert first.intermediates["branch-geo"] == pytest.approx(
        first.intermediates["branch-min"], rel=1e-9
    )


def test_triple_split_chain_order_and_soundness():
    for seed in range(12):
        A, B = commuting_pair(seed + 110)
        first, second = bound_pair_triple(GEO, A, B)
        assert first.value <= second.value + 1e-10 * max(1.0, second.value)
        oracle, slack = oracle_with_slack(GEO, A @ B)
        for b in (first, second):
            assert b.value >= oracle - slack
            assert b.intermediates["branch-geo"] >= oracle - slack
            assert b.intermediates["branch-min"] >= oracle - slack


# ---------------------------------------------------------------------------
# Norm-only bounds
# ---------------------------------------------------------------------------


def test_pm_quadratic_shift_pair_equality():
    # AB + BA = I and AB - BA = diag(1, -1): oracle 1, bound 1
    for sign in (+1, -1):
        b = bound_pm_quadratic(SHIFT, SHIFT_T, sign)
        oracle = spectral_radius(
            SHIFT @ SHIFT_T + sign * (SHIFT_T @ SHIFT)
        )
        assert oracle == pytest.approx(1.0, abs=1e-12)
        assert b.value == pytest.approx(1.0, abs=1e-10)


def test_pm_quadratic_zero():
    Z = np.zeros((2, 2))
    assert bound_pm_quadratic(Z, Z).value == 0.0


def test_pm_quadratic_soundness_random():
    g = np.random.default_rng(5)
    for _ in range(20):
        A = g.standard_normal((4, 4)) + 1j * g.standard_normal((4, 4))
        B = g.standard_normal((4, 4)) + 1j * g.standard_normal((4, 4))
        for sign in (+1, -1):
            b = bound_pm_quadratic(A, B, sign)
            oracle = spectral_radius(A @ B + sign * (B @ A))
            assert b.value >= oracle - 1e-8 * max(1.0, oracle)


def test_pm_mixed_shift_pair():
    # B^2 = 0 kills the left arm: bound = ||AB|| = 1 = oracle, both signs
    for sign in (+1, -1):
        b = bound_pm_mixed(SHIFT, SHIFT_T, sign)
        oracle = spectral_radius(SHIFT @ SHIFT_T + sign * (SHIFT_T @ SHIFT))
        assert b.value == pytest.approx(1.0, abs=1e-12)
        assert b.value >= oracle - 1e-10


def test_pm_mixed_line_below_relaxations():
    g = np.random.default_rng(6)
    for _ in range(20):
        A = g.standard_normal((3, 3)) + 1j * g.standard_normal((3, 3))
        B = g.standard_normal((3, 3)) + 1j * g.standard_normal((3, 3))
        b = bound_pm_mixed(A, B)
        for key in ("relaxed-geo", "relaxed-min"):
            arm = b.intermediates[key]
            assert b.value <= arm + 1e-10 * max(1.0, arm)


def test_product_half_identity_pair():
    eye = np.eye(2)
    b = bound_product_half(eye, eye)
    assert b.value == pytest.approx(1.0, abs=1e-12)


def test_product_half_signed_diagonal():
    A = np.diag([0.5, -0.5]).astype(complex)
    b = bound_product_half(A, A)
    assert b.value == pytest.approx(0.25, abs=1e-12)
    assert spectral_radius(A @ A) == pytest.approx(0.25, abs=1e-12)


def test_product_half_rejects_noncommuting():
    with pytest.raises(NonCommuting):
        bound_product_half(SHIFT, SHIFT_T)


def test_product_half_soundness_random():
    for seed in range(15):
        A, B = commuting_pair(seed + 140)
        b = bound_product_half(A, B)
        oracle = spectral_radius(A @ B)
        assert b.value >= oracle - 1e-8 * max(1.0, oracle)


def test_product_chain_identity_pair():
    eye = np.eye(3)
    b = bound_product_chain(eye, eye)
    assert b.value == pytest.approx(1.0, abs=1e-12)
    assert spectral_radius(eye @ eye) == pytest.approx(1.0)


def test_product_chain_line_below_relaxations_and_oracle():
    for seed in range(15):
        A, B = commuting_pair(seed + 170)
        b = bound_product_chain(A, B)
        oracle = spectral_radius(A @ B)
        assert b.value >= oracle - 1e-8 * max(1.0, oracle)
        for key in ("relaxed-geo", "relaxed-min"):
            arm = b.intermediates[key]
            assert b.value <= arm + 1e-10 * max(1.0, arm)


# ---------------------------------------------------------------------------
# Reverse Hölder sum inequality
# ---------------------------------------------------------------------------


def test_reverse_holder_fixed_example():
    gap = reverse_holder_gap([1.0, 2.0], [1.0, 0.5], [0.25, 1.0], 2.0)
    assert gap >= 0.0


@settings(max_examples=300, deadline=None)
@given(
    data=st.lists(
        st.tuples(
            st.floats(min_value=0.0, max_value=10.0),
            st.complex_numbers(max_magnitude=5.0, allow_nan=False,
                               allow_infinity=False),
            st.complex_numbers(max_magnitude=5.0, allow_nan=False,
                               allow_infinity=False),
        ),
        min_size=1, max_size=12,
    ),
    p=st.floats(min_value=1.01, max_value=8.0),
)
def test_reverse_holder_property(data, p):
    weights = [d[0] for d in data]
    xs = [d[1] for d in data]
    ys = [d[2] for d in data]
    gap = reverse_holder_gap(weights, xs, ys, p)
    scale = max(
        1.0,
        sum(weights) * max(abs(x) for x in xs) ** p
        * max(1.0, max(abs(y) for y in ys)) ** (p / (p - 1)),
    )
    assert gap >= -1e-9 * scale


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------


def test_best_bound_single_zero_exp():
    report = best_bound(EXP, np.zeros((2, 2)))
    assert report.minimum is not None
    assert report.minimum.name == "companion-radius"
    assert report.minimum.value == pytest.approx(1.0, abs=1e-12)


def test_best_bound_pair_example():
    A = np.diag([0.6, 0.6]).astype(complex)
    B = np.diag([0.5, 0.5]).astype(complex)
    report = best_bound(GEO, A, B)
    by_name = {r.name: r for r in report.results}
    assert by_name["holder-geo(p=2)"].value == pytest.approx(
        1.4433756729740643, abs=1e-9
    )
    oracle = true_function_radius(GEO, A @ B, TOL)
    assert report.minimum is not None
    assert report.minimum.target == "f(AB)"
    assert report.minimum.value >= oracle - 1e-8 * max(1.0, oracle) - TOL


def test_best_bound_noncommuting_gating():
    report = best_bound(GEO, SHIFT, SHIFT_T)
    gated = [r for r in report.results if r.target in ("f(AB)", "AB")]
    assert gated and all(not r.available for r in gated)
    assert all("commutator test failed" in r.reason for r in gated)
    free = [r for r in report.results if r.target in ("AB+BA", "AB-BA")]
    assert free and all(r.available for r in free)
    assert report.minimum is None


def test_bound_result_serialization():
    b = bound_single(EXP, np.zeros((2, 2)))
    record = b.as_record()
    assert record["name"] == "companion-radius"
    assert record["target"] == "f(T)"
    assert record["value"] == pytest.approx(1.0)
    assert record["preconditions"] == [["||T|| < R", True, 0.0]]
    assert "r(T)" in record["intermediates"]
