"""Nash equilibria: grid-global certification over directions, analytic
stationarity conditions for the entangled states, and the classical 2x2 game.

A certificate is global over a finite grid of deviations, not a first-order
test. Stationary points of the closed-form payoffs can be minima or saddles,
so a profile that zeroes the condition residuals need not certify.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .games import (
    GameMatrix,
    PayoffPair,
    as_state,
    classical_mixed,
    payoff_evaluator,
)
from .qcore import StrategyProfile

DEFAULT_EPSILON = 1e-6
DEFAULT_VERIFY_RESOLUTION = 64
DEFAULT_SCAN_RESOLUTION = 16
MIN_RESOLUTION = 8


@dataclass(frozen=True)
class NashCertificate:
    profile: StrategyProfile
    payoffs: PayoffPair
    max_gain_a: float
    max_gain_b: float
    epsilon: float
    grid_resolution: int

    @property
    def is_nash(self) -> bool:
        return self.max_gain_a <= self.epsilon and self.max_gain_b <= self.epsilon

    def as_dict(self) -> dict:
        ta, pa, tb, pb = self.profile.angles
        return {
            "theta_a": ta,
            "phi_a": pa,
            "theta_b": tb,
            "phi_b": pb,
            "pi_a": float(self.payoffs.pi_a),
            "pi_b": float(self.payoffs.pi_b),
            "max_gain_a": self.max_gain_a,
            "max_gain_b": self.max_gain_b,
            "epsilon": self.epsilon,
            "resolution": self.grid_resolution,
            "is_nash": self.is_nash,
        }


def direction_grid(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened (theta, phi) grid, theta-major.

    theta_i = i pi / (R - 1) includes both poles; phi_j = 2 pi j / R wraps.
    """
    if resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    thetas = np.arange(resolution) * np.pi / (resolution - 1)
    phis = np.arange(resolution) * 2 * np.pi / resolution
    t, p = np.meshgrid(thetas, phis, indexing="ij")
    return t.ravel(), p.ravel()


def scan_grid(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Candidate grid for scans: theta_i = i pi / R for i = 0..R, phi_j = 2 pi j / R.

    One more theta row than the deviation grid, so that even R puts the
    equator on the grid alongside both poles.
    """
    if resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    thetas = np.arange(resolution + 1) * np.pi / resolution
    phis = np.arange(resolution) * 2 * np.pi / resolution
    t, p = np.meshgrid(thetas, phis, indexing="ij")
    return t.ravel(), p.ravel()


def _check_resolution(resolution):
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"grid resolution must be >= {MIN_RESOLUTION}, got {resolution}")


def _best_deviation(payoff_fn, player, dev_t, dev_p, other_t, other_p):
    """Best payoff the deviating player reaches against each opponent direction."""
    dev_t, dev_p = dev_t[:, None], dev_p[:, None]
    other_t, other_p = np.asarray(other_t)[None, :], np.asarray(other_p)[None, :]
    if player == "A":
        return np.max(payoff_fn(dev_t, dev_p, other_t, other_p).pi_a, axis=0)
    return np.max(payoff_fn(other_t, other_p, dev_t, dev_p).pi_b, axis=0)


def _player(player):
    player = str(player).upper()
    if player not in ("A", "B"):
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")
    return player


def best_response_gain(payoff_fn, profile: StrategyProfile, player: str, grid_resolution: int) -> float:
    """Largest improvement a unilateral deviation on the grid gives `player`, floored at 0.

    `payoff_fn(theta_a, phi_a, theta_b, phi_b)` must broadcast over arrays and
    return a PayoffPair of arrays.
    """
    player = _player(player)
    _check_resolution(grid_resolution)
    ta, pa, tb, pb = profile.angles
    here = payoff_fn(ta, pa, tb, pb)
    dev_t, dev_p = direction_grid(grid_resolution)
    if player == "A":
        best = _best_deviation(payoff_fn, "A", dev_t, dev_p, [tb], [pb])[0]
        return max(0.0, float(best - here.pi_a))
    best = _best_deviation(payoff_fn, "B", dev_t, dev_p, [ta], [pa])[0]
    return max(0.0, float(best - here.pi_b))


def certify_profile(payoff_fn, profile: StrategyProfile, epsilon=DEFAULT_EPSILON,
                    grid_resolution=DEFAULT_VERIFY_RESOLUTION) -> NashCertificate:
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    here = payoff_fn(*profile.angles)
    return NashCertificate(
        profile=profile,
        payoffs=PayoffPair(float(here.pi_a), float(here.pi_b)),
        max_gain_a=best_response_gain(payoff_fn, profile, "A", grid_resolution),
        max_gain_b=best_response_gain(payoff_fn, profile, "B", grid_resolution),
        epsilon=float(epsilon),
        grid_resolution=int(grid_resolution),
    )


def certify_nash(state, game: GameMatrix, profile: StrategyProfile, epsilon=DEFAULT_EPSILON,
                 grid_resolution=DEFAULT_VERIFY_RESOLUTION) -> NashCertificate:
    """Certify `profile` as an epsilon-NE of the directional game on `state`."""
    return certify_profile(payoff_evaluator(game, state), profile, epsilon, grid_resolution)


def scan_nash(state, game: GameMatrix, coarse_resolution=DEFAULT_SCAN_RESOLUTION,
              epsilon=DEFAULT_EPSILON, verify_resolution=DEFAULT_VERIFY_RESOLUTION) -> list[NashCertificate]:
    """Certify every profile on the coarse grid and keep those that pass.

    Candidates come from `scan_grid(coarse_resolution)`; deviations are
    searched on `direction_grid(verify_resolution)`. Output follows
    lexicographic (theta_a, phi_a, theta_b, phi_b) order.
    """
    _check_resolution(coarse_resolution)
    _check_resolution(verify_resolution)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    payoff_fn = payoff_evaluator(game, as_state(state))
    ct, cp = scan_grid(coarse_resolution)
    dev_t, dev_p = direction_grid(verify_resolution)

    best_a = _best_deviation(payoff_fn, "A", dev_t, dev_p, ct, cp)  # indexed by Bob's direction
    best_b = _best_deviation(payoff_fn, "B", dev_t, dev_p, ct, cp)  # indexed by Alice's direction
    here = payoff_fn(ct[:, None], cp[:, None], ct[None, :], cp[None, :])
    gain_a = np.maximum(best_a[None, :] - here.pi_a, 0.0)
    gain_b = np.maximum(best_b[:, None] - here.pi_b, 0.0)
    passing = np.argwhere((gain_a <= epsilon) & (gain_b <= epsilon))

    certs = [
        NashCertificate(
            profile=StrategyProfile.from_angles(ct[i], cp[i], ct[j], cp[j]),
            payoffs=PayoffPair(float(here.pi_a[i, j]), float(here.pi_b[i, j])),
            max_gain_a=float(gain_a[i, j]),
            max_gain_b=float(gain_b[i, j]),
            epsilon=float(epsilon),
            grid_resolution=int(verify_resolution),
        )
        for i, j in passing
    ]
    certs.sort(key=lambda c: c.profile.angles)
    return certs


# --- classical 2x2 ----------------------------------------------------------


@dataclass(frozen=True)
class MixedNash:
    p_star: float
    q_star: float

    def __post_init__(self):
        for v in (self.p_star, self.q_star):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{v} is not a probability")


@dataclass
class ClassicalNashSet:
    """Equilibria of the classical game.

    When `degenerate` is set the equilibrium set is a continuum and
    `equilibria` only lists the isolated corner points that qualify.
    """

    equilibria: list[MixedNash] = field(default_factory=list)
    degenerate: bool = False

    def __iter__(self):
        return iter(self.equilibria)

    def __len__(self):
        return len(self.equilibria)

    def __getitem__(self, i):
        return self.equilibria[i]


def classical_nash_2x2(game: GameMatrix, tol: float = 1e-12) -> ClassicalNashSet:
    """All Nash equilibria (p*, q*) of the symmetric mixed-strategy game."""
    a, b, c, d = game

    # Advantage of the first pure strategy against an opponent playing it w.p. x.
    def advantage(x):
        return (a - c) * x + (b - d) * (1 - x)

    found = []
    for p, q in itertools.product((0.0, 1.0), repeat=2):
        alice_ok = advantage(q) >= -tol if p == 1.0 else advantage(q) <= tol
        bob_ok = advantage(p) >= -tol if q == 1.0 else advantage(p) <= tol
        if alice_ok and bob_ok:
            found.append(MixedNash(p, q))

    degenerate = abs(a - c) <= tol or abs(b - d) <= tol
    d1 = game.delta1
    if not degenerate and abs(d1) > tol:
        x = (d - b) / d1
        if tol < x < 1 - tol:
            found.append(MixedNash(float(x), float(x)))
    found.sort(key=lambda n: (n.p_star, n.q_star))
    return ClassicalNashSet(found, degenerate)


def classical_payoffs(game: GameMatrix, ne: MixedNash) -> PayoffPair:
    return classical_mixed(game, ne.p_star, ne.q_star)


# --- analytic conditions ----------------------------------------------------


def _profile_angles(profile):
    if isinstance(profile, StrategyProfile):
        return profile.angles
    return tuple(profile)


def ne_conditions_maxent(profile) -> tuple[float, float, float]:
    """Residuals of the stationarity equations for (|00> + i|11>)/sqrt(2)."""
    ta, pa, tb, pb = _profile_angles(profile)
    s = np.sin(pa + pb)
    return (
        float(np.cos(ta) * np.sin(tb) * s - np.sin(ta) * np.cos(tb)),
        float(np.sin(ta) * np.cos(tb) * s - np.cos(ta) * np.sin(tb)),
        float(np.sin(ta) * np.sin(tb) * np.cos(pa + pb)),
    )


def maxent_edge_profiles(resolution: int = DEFAULT_VERIFY_RESOLUTION) -> list[StrategyProfile]:
    """The 16 pole-edge profiles: theta in {0, pi}, phi at the first and last grid column."""
    phis = (0.0, 2 * np.pi * (resolution - 1) / resolution)
    return [
        StrategyProfile.from_angles(ta, pa, tb, pb)
        for ta, pa, tb, pb in itertools.product((0.0, np.pi), phis, (0.0, np.pi), phis)
    ]


def ne_conditions_state3(profile) -> tuple[float, float, float, float]:
    """Residuals of the four stationarity equations for (|00>+|01>-|10>+|11>)/2."""
    ta, pa, tb, pb = _profile_angles(profile)
    sta, cta, stb, ctb = np.sin(ta), np.cos(ta), np.sin(tb), np.cos(tb)
    spa, cpa, spb, cpb = np.sin(pa), np.cos(pa), np.sin(pb), np.cos(pb)
    return (
        float(stb * (cta * spa * spb + sta * cpb) + cta * ctb * cpa),
        float(sta * (ctb * spa * spb - stb * cpa) - cta * ctb * cpb),
        float(sta * (stb * cpa * spb - ctb * spa)),
        float(stb * (sta * spa * cpb + cta * spb)),
    )


def arccot(x):
    """Inverse cotangent on the branch (0, pi)."""
    return np.arctan2(1.0, x)


# Below this, sin or cos of a family angle counts as zero.
AXIS_GUARD = 1e-9


def _family_admissible(phi_a, phi_b):
    return (
        (np.abs(np.sin(phi_a)) > AXIS_GUARD)
        & (np.abs(np.sin(phi_b)) > AXIS_GUARD)
        & (np.abs(np.cos(phi_a)) > AXIS_GUARD)
        & (np.abs(np.cos(phi_b)) > AXIS_GUARD)
    )


def family_thetas_state3(phi_a, phi_b):
    """theta_a*, theta_b* on the interior family, vectorized; no admissibility check."""
    cot_a = np.cos(phi_a) / np.sin(phi_a)
    cot_b = np.cos(phi_b) / np.sin(phi_b)
    return arccot(-np.sin(phi_a) * cot_b), arccot(cot_a * np.sin(phi_b))


def family_payoff_state3(phi_a, phi_b, delta1, delta2):
    """Payoff along the interior family as a function of (phi_a*, phi_b*) alone.

    Non-admissible points (phi on an axis) come back as NaN.
    """
    phi_a = np.asarray(phi_a, dtype=float)
    phi_b = np.asarray(phi_b, dtype=float)
    ok = _family_admissible(phi_a, phi_b)
    with np.errstate(divide="ignore", invalid="ignore"):
        cot_a = np.cos(phi_a) / np.sin(phi_a)
        cot_b = np.cos(phi_b) / np.sin(phi_b)
        th_a, th_b = family_thetas_state3(phi_a, phi_b)
        bracket = (
            np.sin(phi_a) * np.sin(phi_b)
            + cot_a * np.cos(phi_a) * np.sin(phi_b)
            + np.sin(phi_a) * np.cos(phi_b) * cot_b
        )
        pi = (delta2 - delta1 * np.sin(th_a) * np.sin(th_b) * bracket) / 4
    return np.where(ok, pi, np.nan)


@dataclass(frozen=True)
class FamilySolution:
    profile: StrategyProfile
    payoffs: PayoffPair

    @property
    def theta_a(self):
        return self.profile.a.theta

    @property
    def theta_b(self):
        return self.profile.b.theta


def ne_family_state3(phi_a_star: float, phi_b_star: float, game: GameMatrix) -> FamilySolution:
    """Interior stationary profile of the asymmetric entangled state for given phis."""
    if not _family_admissible(phi_a_star, phi_b_star):
        raise ValueError(
            "phi_a* and phi_b* must avoid multiples of pi/2 (sin and cos both nonzero)"
        )
    th_a, th_b = family_thetas_state3(phi_a_star, phi_b_star)
    pi = float(family_payoff_state3(phi_a_star, phi_b_star, game.delta1, game.delta2))
    return FamilySolution(
        StrategyProfile.from_angles(float(th_a), phi_a_star, float(th_b), phi_b_star),
        PayoffPair(pi, pi),
    )


def state3_axis_candidates() -> list[tuple[StrategyProfile, tuple[float, float, float, float]]]:
    """Candidates with sin(phi) = 0 on both sides and cot(theta) = +-1.

    Every sign combination is enumerated; each comes with its residual
    quadruple so callers can see which combinations are stationary.
    """
    out = []
    t_plus, t_minus = np.pi / 4, 3 * np.pi / 4  # cot = +1, -1
    for ta, tb, pa, pb in itertools.product((t_plus, t_minus), (t_plus, t_minus), (0.0, np.pi), (0.0, np.pi)):
        prof = StrategyProfile.from_angles(ta, pa, tb, pb)
        out.append((prof, ne_conditions_state3(prof)))
    return out


def state3_pole_solutions() -> list[StrategyProfile]:
    """Pole solutions theta in {0, pi}, phi in {pi/2, 3pi/2} of the asymmetric state."""
    poles = (0.0, np.pi)
    phis = (np.pi / 2, 3 * np.pi / 2)
    return [
        StrategyProfile.from_angles(ta, pa, tb, pb)
        for ta, pa, tb, pb in itertools.product(poles, phis, poles, phis)
    ]
