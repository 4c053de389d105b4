"""Payoffs for the symmetric 2x2 game, classical and via directional measurements.

The general route is ``quad_probabilities`` followed by ``payoff_pair``: project
the initial state onto the joint eigenbasis of the two chosen measurement axes
and take expectations of the payoff table. The per-state closed forms below are
faster evaluators that the tests hold against that route.

All closed-form evaluators broadcast over numpy arrays of angles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .qcore import Direction, StrategyProfile, TwoQubitState, eigenbasis


@dataclass(frozen=True)
class GameMatrix:
    """Symmetric bimatrix game

                 S1'              S2'
        S1  (alpha, alpha)   (beta, gamma)
        S2  (gamma, beta)    (delta, delta)
    """

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            v = float(getattr(self, name))
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)

    @property
    def delta1(self) -> float:
        return self.alpha - self.beta - self.gamma + self.delta

    @property
    def delta2(self) -> float:
        return self.alpha + self.beta + self.gamma + self.delta

    def weights_a(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma, self.delta])

    def weights_b(self) -> np.ndarray:
        return np.array([self.alpha, self.gamma, self.beta, self.delta])

    def bounds(self) -> tuple[float, float]:
        w = self.weights_a()
        return float(w.min()), float(w.max())

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma, self.delta))


PRISONERS_DILEMMA = GameMatrix(3.0, 0.0, 5.0, 1.0)


class PayoffPair(NamedTuple):
    pi_a: float
    pi_b: float


class OutcomeProbabilities(NamedTuple):
    """Joint outcome probabilities ordered (S1,S1'), (S1,S2'), (S2,S1'), (S2,S2').

    S1/S1' is the +1 outcome along a player's axis, S2/S2' the -1 outcome.
    """

    p11: float
    p12: float
    p21: float
    p22: float

    def validate(self, tol: float = 1e-10) -> "OutcomeProbabilities":
        arr = np.array(self)
        if np.any(arr < -1e-12) or np.any(arr > 1 + 1e-12):
            raise ValueError(f"probabilities out of [0, 1]: {tuple(arr)}")
        if abs(arr.sum() - 1.0) > tol:
            raise ValueError(f"probabilities sum to {arr.sum()!r}")
        return self


PRESET_STATES = {
    "product-uniform": TwoQubitState(np.array([1, 1, 1, 1]) / 2),
    "maxent-i": TwoQubitState(np.array([1, 0, 0, 1j]) / np.sqrt(2)),
    "entangled-asym": TwoQubitState(np.array([1, 1, -1, 1]) / 2),
}


def preset_state(name: str) -> TwoQubitState:
    try:
        return PRESET_STATES[name]
    except KeyError:
        raise ValueError(
            f"unknown state preset {name!r}; choose from {sorted(PRESET_STATES)}"
        ) from None


def as_state(state) -> TwoQubitState:
    if isinstance(state, TwoQubitState):
        return state
    if isinstance(state, str):
        return preset_state(state)
    return TwoQubitState(state)


def _check_prob(name, v):
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{name}={v} is not a probability")
    return v


def classical_mixed(game: GameMatrix, p: float, q: float) -> PayoffPair:
    """Mixed-strategy payoffs; p and q are the probabilities of S1 and S1'."""
    p = _check_prob("p", p)
    q = _check_prob("q", q)
    a, b, c, d = game
    pi_a = a * p * q + b * p * (1 - q) + c * (1 - p) * q + d * (1 - p) * (1 - q)
    pi_b = a * p * q + c * p * (1 - q) + b * (1 - p) * q + d * (1 - p) * (1 - q)
    return PayoffPair(pi_a, pi_b)


def quad_probabilities(state, theta_a, phi_a, theta_b, phi_b) -> np.ndarray:
    """Vectorized probability quads, shape ``broadcast + (4,)``.

    Entry [m, n] of the underlying 2x2 block is |<psi_m^a psi_n^b | state>|^2.
    """
    psi = as_state(state).matrix()
    ea = eigenbasis(theta_a, phi_a).conj()
    eb = eigenbasis(theta_b, phi_b).conj()
    ea, eb = np.broadcast_arrays(ea, eb)
    amp = np.einsum("...mi,ij,...nj->...mn", ea, psi, eb)
    probs = amp.real**2 + amp.imag**2
    return probs.reshape(probs.shape[:-2] + (4,))


def joint_probabilities(state, a: Direction, b: Direction) -> OutcomeProbabilities:
    quad = quad_probabilities(state, a.theta, a.phi, b.theta, b.phi)
    return OutcomeProbabilities(*(float(x) for x in quad))


def payoff_pair(game: GameMatrix, probs) -> PayoffPair:
    quad = np.asarray(probs, dtype=float)
    return PayoffPair(quad @ game.weights_a(), quad @ game.weights_b())


def projection_payoffs(game: GameMatrix, state, theta_a, phi_a, theta_b, phi_b) -> PayoffPair:
    """Payoffs from the projection route, broadcasting over angle arrays."""
    return payoff_pair(game, quad_probabilities(state, theta_a, phi_a, theta_b, phi_b))


def quantum_payoff(game: GameMatrix, state, profile: StrategyProfile) -> PayoffPair:
    pi = projection_payoffs(game, state, *profile.angles)
    return PayoffPair(float(pi.pi_a), float(pi.pi_b))


def payoff_evaluator(game: GameMatrix, state):
    """Bind a game and initial state into ``f(theta_a, phi_a, theta_b, phi_b)``."""
    state = as_state(state)

    def evaluate(theta_a, phi_a, theta_b, phi_b):
        return projection_payoffs(game, state, theta_a, phi_a, theta_b, phi_b)

    return evaluate


# --- closed forms -----------------------------------------------------------


def mixed_from_profile(theta_a, phi_a, theta_b, phi_b):
    """Classical (p, q) reproduced by the product state at these angles."""
    p = (1 + np.sin(theta_a) * np.cos(phi_a)) / 2
    q = (1 + np.sin(theta_b) * np.cos(phi_b)) / 2
    return p, q


def _product_weights(theta_a, phi_a, theta_b, phi_b):
    xa = np.sin(theta_a) * np.cos(phi_a)
    xb = np.sin(theta_b) * np.cos(phi_b)
    return (
        (1 + xa) * (1 + xb) / 4,
        (1 + xa) * (1 - xb) / 4,
        (1 - xa) * (1 + xb) / 4,
        (1 - xa) * (1 - xb) / 4,
    )


def _maxent_correlation(theta_a, phi_a, theta_b, phi_b):
    return np.sin(theta_a) * np.sin(theta_b) * np.sin(phi_a + phi_b) + np.cos(
        theta_a
    ) * np.cos(theta_b)


def _state3_bracket(theta_a, phi_a, theta_b, phi_b):
    return (
        np.sin(theta_a) * np.sin(theta_b) * np.sin(phi_a) * np.sin(phi_b)
        + np.sin(theta_a) * np.cos(theta_b) * np.cos(phi_a)
        - np.cos(theta_a) * np.sin(theta_b) * np.cos(phi_b)
    )


def _angles(profile):
    if isinstance(profile, StrategyProfile):
        return profile.angles
    return tuple(profile)


def closed_payoff_product(game: GameMatrix, profile) -> PayoffPair:
    """Closed form for the product state (|0>+|1>)(|0>+|1>)/2."""
    w = _product_weights(*_angles(profile))
    a, b, c, d = game
    return PayoffPair(
        a * w[0] + b * w[1] + c * w[2] + d * w[3],
        a * w[0] + c * w[1] + b * w[2] + d * w[3],
    )


def closed_payoff_maxent(game: GameMatrix, profile) -> PayoffPair:
    """Closed form for (|00> + i|11>)/sqrt(2); both players get the same payoff."""
    pi = (game.delta2 + game.delta1 * _maxent_correlation(*_angles(profile))) / 4
    return PayoffPair(pi, pi)


def closed_payoff_state3(game: GameMatrix, profile) -> PayoffPair:
    """Closed form for (|00> + |01> - |10> + |11>)/2; symmetric payoffs."""
    pi = (game.delta2 - game.delta1 * _state3_bracket(*_angles(profile))) / 4
    return PayoffPair(pi, pi)


CLOSED_FORMS = {
    "product-uniform": closed_payoff_product,
    "maxent-i": closed_payoff_maxent,
    "entangled-asym": closed_payoff_state3,
}


def embedding_trajectory_residual(profile, p: float, q: float) -> tuple[float, float]:
    """How far each direction is from the trajectory sin(theta)cos(phi) = 2p - 1."""
    p = _check_prob("p", p)
    q = _check_prob("q", q)
    ta, pa, tb, pb = _angles(profile)
    return (
        float(np.sin(ta) * np.cos(pa) - (2 * p - 1)),
        float(np.sin(tb) * np.cos(pb) - (2 * q - 1)),
    )


# --- expanded per-term forms (before simplification) ------------------------

# Sign pattern of each term's two squared brackets. For term (m, n) the brackets
# read
#   [(1+m cA)(1+n cB) + s1 (1+m cA) sB cos pB + s2 (1+n cB) sA cos pA + s3 sA sB cos(pA+pB)]^2
# + [(1+m cA) sB sin pB + s4 (1+n cB) sA sin pA + s5 sA sB sin(pA+pB)]^2
# with the s_i listed below, transcribed term by term.
_EXPANDED_SIGNS = {
    "product-uniform": {
        1: (+1, +1, +1, +1, +1),
        2: (-1, +1, -1, -1, +1),
        3: (+1, -1, -1, -1, -1),
        4: (-1, -1, +1, +1, -1),
    },
    "entangled-asym": {
        1: (+1, -1, +1, -1, +1),
        2: (-1, -1, -1, +1, +1),
        3: (+1, +1, -1, +1, -1),
        4: (-1, +1, +1, -1, -1),
    },
}
_TERM_OUTCOMES = {1: (1, 1), 2: (1, -1), 3: (-1, 1), 4: (-1, -1)}

# Pole guard: below this, 1 +/- cos(theta) is numerically zero.
POLE_GUARD = 1e-12


def _term_coefficient(game: GameMatrix, term: int, player: str) -> float:
    weights = game.weights_a() if player == "A" else game.weights_b()
    return float(weights[term - 1])


def expanded_term(state_id: str, term: int, theta_a, phi_a, theta_b, phi_b) -> float:
    """Unsimplified probability for outcome term 1..4, divided by 16(1+-cA)(1+-cB)."""
    signs = _EXPANDED_SIGNS[state_id][term]
    m, n = _TERM_OUTCOMES[term]
    ca, cb = np.cos(theta_a), np.cos(theta_b)
    sa, sb = np.sin(theta_a), np.sin(theta_b)
    ua, ub = 1 + m * ca, 1 + n * cb
    if min(abs(ua), abs(ub)) < POLE_GUARD:
        raise ValueError("expanded form is singular at theta in {0, pi}")
    s1, s2, s3, s4, s5 = signs
    first = ua * ub + s1 * ua * sb * np.cos(phi_b) + s2 * ub * sa * np.cos(phi_a) + s3 * sa * sb * np.cos(phi_a + phi_b)
    second = ua * sb * np.sin(phi_b) + s4 * ub * sa * np.sin(phi_a) + s5 * sa * sb * np.sin(phi_a + phi_b)
    return float((first**2 + second**2) / (16 * ua * ub))


def closed_term(state_id: str, term: int, theta_a, phi_a, theta_b, phi_b) -> float:
    """Factored probability for outcome term 1..4."""
    if state_id == "product-uniform":
        return float(_product_weights(theta_a, phi_a, theta_b, phi_b)[term - 1])
    if state_id == "entangled-asym":
        x = _state3_bracket(theta_a, phi_a, theta_b, phi_b)
        sign = -1 if term in (1, 4) else 1
        return float((1 + sign * x) / 4)
    raise ValueError(f"no expanded form for state {state_id!r}")


def verify_term_reduction(
    state_id: str, term_index: int, profile, game: GameMatrix, player: str = "A"
) -> tuple[float, float]:
    """(expanded, closed) value of one payoff term, weighted by the player's coefficient.

    Raises ValueError for pole angles, where the expanded form divides by zero.
    """
    if state_id not in _EXPANDED_SIGNS:
        raise ValueError(f"term reduction only defined for {sorted(_EXPANDED_SIGNS)}")
    if term_index not in _TERM_OUTCOMES:
        raise ValueError(f"term_index must be 1..4, got {term_index}")
    angles = _angles(profile)
    coeff = _term_coefficient(game, term_index, player)
    expanded = coeff * expanded_term(state_id, term_index, *angles)
    closed = coeff * closed_term(state_id, term_index, *angles)
    return expanded, closed


def sample_profiles(rng: np.random.Generator, n: int, pole_margin: float = 0.0) -> np.ndarray:
    """n random (theta_a, phi_a, theta_b, phi_b) rows, theta kept pole_margin off the poles."""
    thetas = rng.uniform(pole_margin, np.pi - pole_margin, size=(n, 2))
    phis = rng.uniform(0.0, 2 * np.pi, size=(n, 2))
    return np.column_stack([thetas[:, 0], phis[:, 0], thetas[:, 1], phis[:, 1]])


def max_term_discrepancies(
    samples: int = 1000, seed: int = 0, game: GameMatrix = PRISONERS_DILEMMA, pole_margin: float = 0.01
) -> dict[str, list[float]]:
    """Largest |expanded - closed| per state and term over random non-pole profiles."""
    rng = np.random.default_rng(seed)
    profiles = sample_profiles(rng, samples, pole_margin)
    out = {}
    for state_id in _EXPANDED_SIGNS:
        worst = [0.0] * 4
        for row in profiles:
            for term in range(1, 5):
                for player in ("A", "B"):
                    e, c = verify_term_reduction(state_id, term, row, game, player)
                    worst[term - 1] = max(worst[term - 1], abs(e - c))
        out[state_id] = worst
    return out
