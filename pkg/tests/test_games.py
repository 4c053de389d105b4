import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_profiles
from eprgames.games import (
    CLOSED_FORMS,
    PRESET_STATES,
    GameMatrix,
    OutcomeProbabilities,
    classical_mixed,
    closed_payoff_maxent,
    closed_term,
    embedding_trajectory_residual,
    expanded_term,
    joint_probabilities,
    max_term_discrepancies,
    mixed_from_profile,
    payoff_pair,
    preset_state,
    projection_payoffs,
    quad_probabilities,
    quantum_payoff,
    verify_term_reduction,
)
from eprgames.qcore import Direction, StrategyProfile, joint_eigenstate, projection_probability

HALF = np.pi / 2
QUARTER = np.pi / 4
probs = st.floats(0, 1)


def quad_by_loop(state, a, b):
    """Four explicit projections, the slow way."""
    return [
        projection_probability(state, joint_eigenstate(a, m, b, n))
        for m, n in ((1, 1), (1, -1), (-1, 1), (-1, -1))
    ]


def test_game_coefficients(pd):
    assert pd.delta1 == -1 and pd.delta2 == 9
    assert list(pd.weights_b()) == [3, 5, 0, 1]
    assert pd.bounds() == (0, 5)
    with pytest.raises(ValueError):
        GameMatrix(1, 2, np.nan, 3)


def test_classical_examples(pd):
    assert classical_mixed(pd, 0, 0) == (1, 1)
    assert classical_mixed(pd, 1, 1) == (3, 3)
    assert classical_mixed(pd, 1, 0) == (0, 5)
    with pytest.raises(ValueError):
        classical_mixed(pd, 1.2, 0)


@given(probs, probs)
def test_classical_symmetry(p, q):
    g = GameMatrix(3, 0, 5, 1)
    a, b = classical_mixed(g, p, q)
    b2, a2 = classical_mixed(g, q, p)
    assert np.isclose(a, a2) and np.isclose(b, b2)


def test_joint_probability_examples():
    x = Direction(HALF, 0)
    z = Direction(0, 0)
    assert np.allclose(joint_probabilities("product-uniform", x, x), [1, 0, 0, 0])
    assert np.allclose(joint_probabilities("maxent-i", z, z), [0.5, 0, 0, 0.5])
    d = Direction(HALF, QUARTER)
    assert np.allclose(joint_probabilities("maxent-i", d, d), [0.5, 0, 0, 0.5])


def test_vectorized_quad_matches_loop(rng):
    for name, state in PRESET_STATES.items():
        for _ in range(50):
            a = Direction(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
            b = Direction(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
            assert np.allclose(joint_probabilities(state, a, b), quad_by_loop(state, a, b), atol=1e-14)


def test_quad_shape_and_sum(rng):
    ta, pa, tb, pb = random_profiles(rng, 1000)
    q = quad_probabilities("entangled-asym", ta, pa, tb, pb)
    assert q.shape == (1000, 4)
    assert np.allclose(q.sum(axis=1), 1, atol=1e-12)


def test_validate():
    OutcomeProbabilities(0.25, 0.25, 0.25, 0.25).validate()
    with pytest.raises(ValueError):
        OutcomeProbabilities(0.5, 0.5, 0.5, 0).validate()


def test_payoff_pair_examples(pd):
    assert payoff_pair(pd, (1, 0, 0, 0)) == (3, 3)
    assert np.allclose(payoff_pair(pd, (0.5, 0, 0, 0.5)), (2, 2))
    assert np.allclose(payoff_pair(pd, (0, 0.5, 0.5, 0)), (2.5, 2.5))


def test_quantum_payoff_product_examples(pd):
    prof = StrategyProfile.from_angles
    assert np.allclose(quantum_payoff(pd, "product-uniform", prof(HALF, np.pi, HALF, np.pi)), (1, 1))
    assert np.allclose(quantum_payoff(pd, "product-uniform", prof(HALF, 0, HALF, 0)), (3, 3))
    assert np.allclose(quantum_payoff(pd, "product-uniform", prof(0, 0, 0, 0)), (2.25, 2.25))


def test_product_reduction(pd, rng):
    ta, pa, tb, pb = random_profiles(rng, 10_000)
    got = projection_payoffs(pd, "product-uniform", ta, pa, tb, pb)
    p, q = mixed_from_profile(ta, pa, tb, pb)
    a, b, c, d = pd
    want_a = a * p * q + b * p * (1 - q) + c * (1 - p) * q + d * (1 - p) * (1 - q)
    want_b = a * p * q + c * p * (1 - q) + b * (1 - p) * q + d * (1 - p) * (1 - q)
    assert np.abs(got.pi_a - want_a).max() < 1e-10
    assert np.abs(got.pi_b - want_b).max() < 1e-10


@pytest.mark.parametrize("state", sorted(CLOSED_FORMS))
def test_closed_forms_match_projection(state, rng):
    game = GameMatrix(*rng.uniform(-3, 7, 4))
    ta, pa, tb, pb = random_profiles(rng, 10_000)
    got = CLOSED_FORMS[state](game, (ta, pa, tb, pb))
    want = projection_payoffs(game, state, ta, pa, tb, pb)
    assert np.abs(got.pi_a - want.pi_a).max() < 1e-10
    assert np.abs(got.pi_b - want.pi_b).max() < 1e-10


def test_maxent_examples(pd):
    assert np.allclose(closed_payoff_maxent(pd, (0, 0, 0, 0)), (2, 2))
    assert np.allclose(closed_payoff_maxent(pd, (0, 0, np.pi, 0)), (2.5, 2.5))
    # E = 1/sqrt(2) here, so both get (9 - 1/sqrt(2))/4
    prof = StrategyProfile.from_angles(QUARTER, QUARTER, HALF, QUARTER)
    want = (9 - 1 / np.sqrt(2)) / 4
    assert np.isclose(want, 2.0732233047033631)
    assert np.allclose(closed_payoff_maxent(pd, prof), (want, want), atol=1e-12)
    assert np.allclose(quantum_payoff(pd, "maxent-i", prof), (want, want), atol=1e-12)


def test_maxent_symmetric(rng):
    ta, pa, tb, pb = random_profiles(rng, 2000)
    q = quad_probabilities("maxent-i", ta, pa, tb, pb)
    assert np.abs(q[:, 1] - q[:, 2]).max() < 1e-12


def test_state3_examples(pd):
    f = CLOSED_FORMS["entangled-asym"]
    assert np.allclose(f(pd, (0, 0, 0, 0)), (2.25, 2.25))
    assert np.allclose(f(pd, (HALF, HALF, HALF, HALF)), (2.5, 2.5))
    assert np.allclose(f(pd, (0, HALF, 0, HALF)), (2.25, 2.25))


def test_trajectory_residual_examples():
    assert np.allclose(embedding_trajectory_residual((HALF, 0, HALF, 0), 1, 1), (0, 0))
    assert np.allclose(embedding_trajectory_residual((HALF, np.pi, HALF, np.pi), 0, 0), (0, 0))
    assert np.allclose(embedding_trajectory_residual((0, 0, 0, 0), 0.5, 0.5), (0, 0))


def test_term_reduction_examples(pd):
    e, c = verify_term_reduction("product-uniform", 1, (HALF, 0, HALF, 0), pd)
    assert np.isclose(e, 3) and np.isclose(c, 3)
    e, c = verify_term_reduction("product-uniform", 2, (HALF, 0, HALF, np.pi), pd)
    assert e == 0 and c == 0
    e, c = verify_term_reduction("entangled-asym", 3, (HALF, HALF, HALF, HALF), pd)
    assert np.isclose(e, 2.5) and np.isclose(c, 2.5)


def test_closed_terms_are_the_quad(rng):
    for state in ("product-uniform", "entangled-asym"):
        for _ in range(100):
            ang = (rng.uniform(0, np.pi), rng.uniform(0, 7), rng.uniform(0, np.pi), rng.uniform(0, 7))
            quad = quad_probabilities(state, *ang)
            assert np.allclose([closed_term(state, t, *ang) for t in range(1, 5)], quad, atol=1e-12)


def test_expanded_rejects_poles():
    with pytest.raises(ValueError):
        expanded_term("product-uniform", 1, np.pi, 0, 1, 0)
    with pytest.raises(ValueError):
        verify_term_reduction("maxent-i", 1, (1, 1, 1, 1), GameMatrix(1, 2, 3, 4))


def test_max_discrepancies(pd):
    found = max_term_discrepancies(1000, 7, pd)
    assert set(found) == {"product-uniform", "entangled-asym"}
    assert max(max(v) for v in found.values()) < 1e-9


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, np.pi - 0.05), st.floats(0, 2 * np.pi), st.floats(0.05, np.pi - 0.05), st.floats(0, 2 * np.pi))
def test_expanded_equals_closed_property(ta, pa, tb, pb):
    for state in ("product-uniform", "entangled-asym"):
        for t in range(1, 5):
            assert np.isclose(expanded_term(state, t, ta, pa, tb, pb), closed_term(state, t, ta, pa, tb, pb), atol=1e-10)


def test_preset_lookup():
    assert preset_state("maxent-i") is PRESET_STATES["maxent-i"]
    with pytest.raises(ValueError):
        preset_state("ghz")
