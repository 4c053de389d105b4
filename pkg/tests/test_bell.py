import numpy as np
import pytest

from conftest import random_profiles
from eprgames.bell import (
    INCONSISTENT,
    NEGATIVE_DISCRIMINANT,
    OUT_OF_RANGE,
    ChshSetting,
    EmbeddingTargets,
    chsh_from_correlators,
    chsh_lambda,
    classical_embedding_solve,
    correlator,
    embedding_check_profile,
)
from eprgames.games import PRESET_STATES, GameMatrix, mixed_from_profile, quad_probabilities
from eprgames.qcore import Direction, StrategyProfile

HALF = np.pi / 2
QUARTER = np.pi / 4
Z = Direction(0, 0)


def random_setting(rng):
    return ChshSetting(*[Direction(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)) for _ in range(4)])


def test_correlator_examples():
    assert np.isclose(correlator("maxent-i", Z, Z), 1)
    assert np.isclose(correlator("maxent-i", Z, Direction(np.pi, 0)), -1)
    x = Direction(HALF, 0)
    assert np.isclose(correlator("product-uniform", x, x), 1)


def test_correlator_maxent_formula(rng):
    for _ in range(500):
        ta, pa, tb, pb = rng.uniform(0, np.pi), rng.uniform(0, 7), rng.uniform(0, np.pi), rng.uniform(0, 7)
        want = np.sin(ta) * np.sin(tb) * np.sin(pa + pb) + np.cos(ta) * np.cos(tb)
        assert abs(correlator("maxent-i", Direction(ta, pa), Direction(tb, pb)) - want) < 1e-12


def test_chsh_examples():
    assert np.isclose(chsh_lambda("maxent-i", ChshSetting(Z, Z, Z, Z)), 2)
    s = ChshSetting.from_angles([QUARTER, QUARTER, 3 * QUARTER, QUARTER, HALF, QUARTER, QUARTER, QUARTER])
    assert abs(chsh_lambda("maxent-i", s) - (1 + np.sqrt(2))) < 1e-12
    s = ChshSetting.from_angles([HALF, QUARTER, 0, QUARTER, QUARTER, QUARTER, 3 * QUARTER, QUARTER])
    assert np.isclose(chsh_lambda("maxent-i", s), 2 * np.sqrt(2))


def test_setting_needs_eight_angles():
    with pytest.raises(ValueError):
        ChshSetting.from_angles([0] * 7)


def test_probability_form_equals_correlator_form(rng):
    for _ in range(2000):
        s = random_setting(rng)
        for state in PRESET_STATES.values():
            assert abs(chsh_lambda(state, s) - chsh_from_correlators(state, s)) < 1e-12


def test_tsirelson_and_product_bound(rng):
    worst = {name: 0.0 for name in PRESET_STATES}
    for _ in range(10_000):
        s = random_setting(rng)
        for name, state in PRESET_STATES.items():
            worst[name] = max(worst[name], abs(chsh_lambda(state, s)))
    assert max(worst.values()) <= 2 * np.sqrt(2) + 1e-9
    assert worst["product-uniform"] <= 2 + 1e-9
    # the entangled presets do get past the classical bound somewhere
    assert worst["maxent-i"] > 2.5 and worst["entangled-asym"] > 2.5


def test_solve_examples():
    c = (1 + 1 / np.sqrt(2)) / 4
    res = classical_embedding_solve(EmbeddingTargets(c, (2 - np.sqrt(2)) / 4, c))
    assert not res and res.reason == NEGATIVE_DISCRIMINANT
    # s = 1, pq = c gives q = (1 +- sqrt(1 - 4c))/2 with 1 - 4c = -1/sqrt(2)
    assert np.isclose(res.discriminant, -1 / np.sqrt(2))
    res = classical_embedding_solve(EmbeddingTargets(1, 0, 0))
    assert res and (res.p, res.q) == (1, 1)
    res = classical_embedding_solve(EmbeddingTargets(0.25, 0.5, 0.25))
    assert res and np.isclose(res.p, 0.5) and np.isclose(res.q, 0.5)


def unchecked_targets(c1, c2, c3):
    t = EmbeddingTargets.__new__(EmbeddingTargets)
    for name, v in zip(("c1", "c2", "c3"), (c1, c2, c3)):
        object.__setattr__(t, name, v)
    return t


def test_solve_other_reasons():
    # Targets that pass validation always satisfy c3 = 1 - s + c1 and keep both
    # roots in [0, 1], so these two codes need hand-built targets.
    assert classical_embedding_solve(unchecked_targets(0.0, 0.5, 0.4)).reason == INCONSISTENT
    assert classical_embedding_solve(unchecked_targets(0.0, 1.5, 0.0)).reason == OUT_OF_RANGE


def test_targets_validated():
    with pytest.raises(ValueError):
        EmbeddingTargets(0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        EmbeddingTargets(-0.1, 0.6, 0.5)


def test_check_profile_maxent():
    g = GameMatrix(3, 0, 0, 1)
    res = embedding_check_profile(g, "maxent-i", StrategyProfile.from_angles(QUARTER, QUARTER, HALF, QUARTER))
    assert res.reason == NEGATIVE_DISCRIMINANT
    res = embedding_check_profile(g, "maxent-i", StrategyProfile(Z, Z))
    assert res.reason == NEGATIVE_DISCRIMINANT and np.isclose(res.discriminant, -1)
    with pytest.raises(ValueError):
        embedding_check_profile(GameMatrix(3, 0, 5, 1), "maxent-i", StrategyProfile(Z, Z))


def test_check_profile_product_always_embeds(rng):
    g = GameMatrix(2, 1, 1, 0)
    ta, pa, tb, pb = random_profiles(rng, 1000)
    for row in zip(ta, pa, tb, pb):
        res = embedding_check_profile(g, "product-uniform", StrategyProfile.from_angles(*row))
        assert res
        p, q = mixed_from_profile(*row)
        assert np.isclose(res.p, max(p, q), atol=1e-7) and np.isclose(res.q, min(p, q), atol=1e-7)
        quad = quad_probabilities("product-uniform", *row)
        rebuilt = (res.p * res.q, res.p + res.q - 2 * res.p * res.q, (1 - res.p) * (1 - res.q))
        assert np.allclose(rebuilt, (quad[0], quad[1] + quad[2], quad[3]), atol=1e-9)
