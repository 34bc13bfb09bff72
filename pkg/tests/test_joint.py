import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from helpers import (
    boundary_alphas,
    random_admissible_spec,
    random_direction_pair,
    random_saturating_spec,
    random_state,
    random_unit,
)
from spinjoint import (
    ID2,
    BoundViolated,
    DegenerateDirection,
    JointSpec,
    NotSaturating,
    SwitchRealization,
    bound_lhs,
    general_effect_min_eigenvalues,
    general_joint_povm,
    is_admissible,
    joint_variances,
    max_symmetric_alpha,
    optimal_joint_povm,
    outcome_probabilities,
    outcome_values,
    pauli_dot,
    product_form_check,
    state_from_bloch,
    switch_povm,
    switch_realization,
    validate,
)

X = np.array([1.0, 0.0, 0.0])
Y = np.array([0.0, 1.0, 0.0])
Z = np.array([0.0, 0.0, 1.0])
SQ2 = math.sqrt(2.0)


def test_bound_lhs_examples():
    assert bound_lhs(JointSpec(Z, Z, 1.0, 1.0)) == pytest.approx(2.0, abs=1e-12)
    assert bound_lhs(JointSpec(X, Z, 1 / SQ2, 1 / SQ2)) == pytest.approx(2.0, abs=1e-12)
    # 2 * 0.8 * sqrt(2), inadmissible
    assert bound_lhs(JointSpec(X, Z, 0.8, 0.8)) == pytest.approx(1.6 * SQ2, abs=1e-12)


def test_product_form_examples():
    assert product_form_check(JointSpec(X, Z, 1 / SQ2, 1 / SQ2)) == pytest.approx(1.0, abs=1e-12)
    assert product_form_check(JointSpec(X, Z, 1.0, 0.0)) == pytest.approx(1.0, abs=1e-12)
    assert product_form_check(JointSpec(Z, Z, 1.0, 1.0)) == pytest.approx(1.0, abs=1e-12)


def test_max_symmetric_alpha_examples():
    assert max_symmetric_alpha(math.pi / 2) == pytest.approx(1 / SQ2, abs=1e-12)
    assert max_symmetric_alpha(0.0) == 1.0
    # positive root of 2 a^2 - a^4/2 = 1, i.e. a^2 = 2 - sqrt(2)
    assert max_symmetric_alpha(math.pi / 4) == pytest.approx(math.sqrt(2 - SQ2), abs=1e-12)


def test_max_symmetric_alpha_against_root_finder():
    # independent oracle: root of the product-form boundary in alpha
    for theta in np.linspace(0.05, math.pi - 0.05, 29):
        c2 = math.cos(theta) ** 2

        def boundary(alpha):
            return 2 * alpha**2 - alpha**4 * c2 - 1.0

        root = brentq(boundary, 0.5, 1.0, xtol=1e-15)
        assert max_symmetric_alpha(theta) == pytest.approx(root, abs=1e-12)


def test_max_symmetric_alpha_saturates_bound():
    rng = np.random.default_rng(23)
    for _ in range(100):
        a, ap = random_direction_pair(rng)
        theta = math.acos(np.clip(a @ ap, -1, 1))
        alpha = max_symmetric_alpha(theta)
        spec = JointSpec(a, ap, alpha, alpha)
        assert abs(bound_lhs(spec) - 2.0) <= 1e-12


alpha_floats = st.floats(0.0, 1.0, allow_nan=False)
coords = st.floats(-1.0, 1.0, allow_nan=False)


@given(st.tuples(coords, coords, coords), st.tuples(coords, coords, coords),
       alpha_floats, alpha_floats)
@settings(deadline=None, max_examples=300)
def test_admissibility_predicates_agree(va, vap, alpha, alpha_p):
    na, nap = np.linalg.norm(va), np.linalg.norm(vap)
    if na < 1e-3 or nap < 1e-3:
        return
    spec = JointSpec(np.asarray(va) / na, np.asarray(vap) / nap, alpha, alpha_p)
    margin_bound = bound_lhs(spec) - 2.0
    margin_product = product_form_check(spec) - 1.0
    min_eig = min(general_effect_min_eigenvalues(spec))
    if min(abs(margin_bound), abs(margin_product), 4 * abs(min_eig)) <= 1e-9:
        return  # boundary band excluded
    verdicts = (margin_bound <= 0, margin_product <= 0, min_eig >= 0)
    assert len(set(verdicts)) == 1
    # the constructor's accept/reject decision matches
    try:
        general_joint_povm(spec)
        constructed = True
    except BoundViolated:
        constructed = False
    assert constructed == verdicts[0]


def test_optimal_joint_povm_explicit_matrix():
    spec = JointSpec(X, Z, 1 / SQ2, 1 / SQ2)
    povm = optimal_joint_povm(spec)
    assert povm.labels == ("++", "--", "+-", "-+")
    expected_pp = 0.25 * np.array(
        [[1 + 1 / SQ2, 1 / SQ2], [1 / SQ2, 1 - 1 / SQ2]], dtype=complex
    )
    assert np.max(np.abs(povm.effect("++").op - expected_pp)) <= 1e-12
    assert validate(povm).passes


def test_optimal_joint_povm_marginals():
    rng = np.random.default_rng(29)
    for _ in range(30):
        spec = random_saturating_spec(rng)
        povm = optimal_joint_povm(spec)
        marg_a = povm.effect("++").op + povm.effect("+-").op
        marg_ap = povm.effect("++").op + povm.effect("-+").op
        assert np.max(np.abs(marg_a - 0.5 * (ID2 + spec.alpha * pauli_dot(spec.a)))) <= 1e-12
        assert np.max(np.abs(marg_ap - 0.5 * (ID2 + spec.alpha_prime * pauli_dot(spec.a_prime)))) <= 1e-12


def test_optimal_joint_povm_collinear_limit():
    povm = optimal_joint_povm(JointSpec(Z, Z, 1.0, 1.0))
    assert np.max(np.abs(povm.effect("++").op - np.diag([1.0, 0.0]))) <= 1e-12
    assert np.max(np.abs(povm.effect("--").op - np.diag([0.0, 1.0]))) <= 1e-12
    assert np.max(np.abs(povm.effect("+-").op)) <= 1e-12
    assert np.max(np.abs(povm.effect("-+").op)) <= 1e-12


def test_optimal_joint_povm_requires_saturation():
    with pytest.raises(NotSaturating):
        optimal_joint_povm(JointSpec(X, Z, 0.5, 0.5))


def test_general_joint_povm_interior_weights():
    povm = general_joint_povm(JointSpec(X, Z, 0.5, 0.5))
    for label in ("++", "--", "+-", "-+"):
        assert np.trace(povm.effect(label).op).real == pytest.approx(0.5, abs=1e-12)
    assert validate(povm).passes


def test_general_equals_optimal_at_saturation():
    rng = np.random.default_rng(31)
    for _ in range(30):
        spec = random_saturating_spec(rng)
        general = general_joint_povm(spec)
        optimal = optimal_joint_povm(spec)
        for label in ("++", "--", "+-", "-+"):
            assert np.max(np.abs(general.effect(label).op - optimal.effect(label).op)) <= 1e-12


def test_general_joint_povm_bound_violated():
    with pytest.raises(BoundViolated) as excinfo:
        general_joint_povm(JointSpec(X, Z, 0.8, 0.8))
    assert excinfo.value.min_eigenvalue == pytest.approx(0.25 * (1 - 0.8 * SQ2), abs=1e-12)


def test_general_joint_povm_degenerate_guess_branch():
    # alpha' = 0: sharp measurement of a plus a fair coin for the second slot
    povm = general_joint_povm(JointSpec(Z, X, 1.0, 0.0))
    mixed = state_from_bloch((0, 0, 0))
    probs = dict(outcome_probabilities(povm, mixed))
    assert probs["++"] == pytest.approx(0.25, abs=1e-12)
    second_mean = sum(outcome_values(l)[1] * p for l, p in probs.items())
    assert second_mean == pytest.approx(0.0, abs=1e-12)


def test_unbiased_averages_from_general_povm():
    # constructed averages track alpha <A> for every admissible spec and state
    rng = np.random.default_rng(37)
    specs = [random_admissible_spec(rng) for _ in range(20)]
    for k in range(1000):
        spec = specs[k % len(specs)]
        state = random_state(rng)
        probs = dict(outcome_probabilities(general_joint_povm(spec), state))
        mean_a = sum(outcome_values(l)[0] * p for l, p in probs.items())
        mean_ap = sum(outcome_values(l)[1] * p for l, p in probs.items())
        m = state.bloch_vector
        assert mean_a == pytest.approx(spec.alpha * float(spec.a @ m), abs=1e-10)
        assert mean_ap == pytest.approx(spec.alpha_prime * float(spec.a_prime @ m), abs=1e-10)


def test_negative_sharpness_factors_are_symmetric():
    # only the moduli enter the admissibility region
    spec = JointSpec(X, Z, -1 / SQ2, 1 / SQ2)
    assert bound_lhs(spec) == pytest.approx(2.0, abs=1e-12)
    povm = optimal_joint_povm(spec)
    assert validate(povm).passes
    state = state_from_bloch(0.5 * X)
    probs = dict(outcome_probabilities(povm, state))
    mean_a = sum(outcome_values(l)[0] * p for l, p in probs.items())
    assert mean_a == pytest.approx(-0.5 / SQ2, abs=1e-12)


def test_joint_variances_examples():
    spec_sharp = JointSpec(Z, X, 1.0, 0.0)
    up = state_from_bloch(Z)
    assert joint_variances(spec_sharp, up).var_joint == pytest.approx(0.0, abs=1e-12)
    mixed = state_from_bloch((0, 0, 0))
    spec = JointSpec(X, Z, 1 / SQ2, 1 / SQ2)
    assert joint_variances(spec, mixed).var_joint == pytest.approx(1.0, abs=1e-12)
    up_a = state_from_bloch(X)
    assert joint_variances(spec, up_a).var_joint == pytest.approx(0.5, abs=1e-12)


def test_variance_decomposition_identity():
    rng = np.random.default_rng(41)
    for _ in range(50):
        spec = random_admissible_spec(rng, min_scale=0.2)
        report = joint_variances(spec, random_state(rng))
        alpha_sq = spec.alpha**2
        assert report.var_joint == pytest.approx(
            (1 - alpha_sq) + alpha_sq * report.var_bare, abs=1e-12
        )
        assert report.var_joint / alpha_sq - report.var_bare == pytest.approx(
            (1 - alpha_sq) / alpha_sq, abs=1e-9
        )


def test_switch_realization_symmetric():
    spec = JointSpec(X, Z, 1 / SQ2, 1 / SQ2)
    sw = switch_realization(spec)
    assert sw.p == pytest.approx(0.5, abs=1e-12)
    assert np.max(np.abs(sw.c - (X + Z) / SQ2)) <= 1e-12
    assert np.max(np.abs(sw.c_prime - (X - Z) / SQ2)) <= 1e-12


def test_switch_realization_requires_saturation_and_nondegenerate():
    with pytest.raises(NotSaturating):
        switch_realization(JointSpec(X, Z, 0.5, 0.5))
    with pytest.raises(DegenerateDirection):
        switch_realization(JointSpec(Z, Z, 1.0, 1.0))


def test_switch_reconstruction_matches_optimal_family():
    rng = np.random.default_rng(43)
    for _ in range(50):
        spec = random_saturating_spec(rng)
        sw = switch_realization(spec)
        assert sw.p == pytest.approx(
            0.5 * np.linalg.norm(spec.alpha * spec.a + spec.alpha_prime * spec.a_prime),
            abs=1e-12,
        )
        rebuilt = switch_povm(sw)
        reference = optimal_joint_povm(spec)
        for label in ("++", "--", "+-", "-+"):
            assert np.max(np.abs(rebuilt.effect(label).op - reference.effect(label).op)) <= 1e-12
        # the switch's defining linear constraints
        v_plus = spec.alpha * spec.a + spec.alpha_prime * spec.a_prime
        v_minus = spec.alpha * spec.a - spec.alpha_prime * spec.a_prime
        assert np.max(np.abs(2 * sw.p * sw.c - v_plus)) <= 1e-12
        assert np.max(np.abs(2 * (1 - sw.p) * sw.c_prime - v_minus)) <= 1e-12


def test_boundary_specs_saturate_exactly():
    rng = np.random.default_rng(47)
    for _ in range(100):
        spec = random_saturating_spec(rng)
        assert abs(bound_lhs(spec) - 2.0) <= 1e-12
        assert is_admissible(spec)


def test_joint_spec_validation():
    with pytest.raises(ValueError):
        JointSpec(X, Z, 1.2, 0.5)
    with pytest.raises(ValueError):
        JointSpec(X, Z, 0.5, 0.5, theta=0.3)  # inconsistent with orthogonal pair
    spec = JointSpec(X, Z, 0.5, 0.5, theta=math.pi / 2)
    assert spec.theta == pytest.approx(math.pi / 2, abs=1e-12)


def test_joint_spec_from_angle_geometry():
    for theta in (0.0, 0.3, math.pi / 2, 2.5, math.pi):
        spec = JointSpec.from_angle(theta, 0.3, 0.4)
        assert float(spec.a @ spec.a_prime) == pytest.approx(math.cos(theta), abs=1e-12)
    spec = JointSpec.from_angle(math.pi / 3, 0.3, 0.4)
    assert spec.a_prime[1] == pytest.approx(0.0, abs=1e-15)  # xz-plane for default a


def test_joint_spec_json_round_trip():
    spec = JointSpec(X, Z, 0.25, 0.75)
    restored = JointSpec.from_json(spec.to_json())
    assert np.array_equal(restored.a, spec.a)
    assert np.array_equal(restored.a_prime, spec.a_prime)
    assert restored.alpha == spec.alpha
    assert restored.alpha_prime == spec.alpha_prime


def test_switch_realization_json_round_trip():
    sw = switch_realization(JointSpec(X, Z, 1 / SQ2, 1 / SQ2))
    restored = SwitchRealization.from_json(sw.to_json())
    assert restored.p == sw.p
    assert np.array_equal(restored.c, sw.c)
    assert np.array_equal(restored.c_prime, sw.c_prime)


def test_admissibility_scan_matches_scalar_functions():
    from spinjoint import admissibility_scan

    rng = np.random.default_rng(59)
    n = 300
    a = np.array([random_unit(rng) for _ in range(n)])
    ap = np.array([random_unit(rng) for _ in range(n)])
    alpha = rng.uniform(0, 1, n)
    alpha_p = rng.uniform(0, 1, n)
    diag_sum, pform, min_eig = admissibility_scan(a, ap, alpha, alpha_p)
    for i in range(n):
        spec = JointSpec(a[i], ap[i], alpha[i], alpha_p[i])
        assert diag_sum[i] == pytest.approx(bound_lhs(spec), abs=1e-12)
        assert pform[i] == pytest.approx(product_form_check(spec), abs=1e-12)
        assert min_eig[i] == pytest.approx(
            min(general_effect_min_eigenvalues(spec)), abs=1e-12
        )


def test_boundary_alphas_helper_respects_caps():
    rng = np.random.default_rng(53)
    for _ in range(200):
        a, ap = random_direction_pair(rng)
        ratio = rng.uniform(0.05, 20.0)
        alpha, alpha_p = boundary_alphas(a, ap, ratio)
        assert abs(alpha) <= 1 + 1e-12
        assert abs(alpha_p) <= 1 + 1e-12
