"""Correlators, the CHSH statistic, and recovery of classical mixed strategies
from a quantum outcome distribution."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .games import GameMatrix, as_state, quad_probabilities
from .qcore import Direction, StrategyProfile

NEGATIVE_DISCRIMINANT = "negative-discriminant"
OUT_OF_RANGE = "out-of-range"
INCONSISTENT = "inconsistent"

EMBED_TOL = 1e-9
TARGET_FLOOR = -1e-12
TARGET_SUM_TOL = 1e-10


def _quad(state, a: Direction, b: Direction) -> np.ndarray:
    return quad_probabilities(as_state(state), a.theta, a.phi, b.theta, b.phi)


def correlator(psi, a: Direction, b: Direction) -> float:
    """Expectation of the product of the two +-1 outcomes."""
    p = _quad(psi, a, b)
    return float(p[0] - p[1] - p[2] + p[3])


@dataclass(frozen=True)
class ChshSetting:
    a: Direction
    a_prime: Direction
    b: Direction
    b_prime: Direction

    @classmethod
    def from_angles(cls, angles) -> "ChshSetting":
        """From eight numbers (theta, phi) for a, a', b, b' in that order."""
        angles = [float(x) for x in angles]
        if len(angles) != 8:
            raise ValueError(f"need 8 angles, got {len(angles)}")
        dirs = [Direction(angles[i], angles[i + 1]) for i in range(0, 8, 2)]
        return cls(*dirs)


def chsh_lambda(psi, setting: ChshSetting) -> float:
    """CHSH combination built from the eight outcome probabilities.

    Anti-correlated outcomes are counted for the (a', b') pair, which is
    where the minus sign of E(a,b)+E(a,b')+E(a',b)-E(a',b') comes from.
    """
    psi = as_state(psi)
    ab = _quad(psi, setting.a, setting.b)
    abp = _quad(psi, setting.a, setting.b_prime)
    apb = _quad(psi, setting.a_prime, setting.b)
    apbp = _quad(psi, setting.a_prime, setting.b_prime)
    total = ab[0] + ab[3] + abp[0] + abp[3] + apb[0] + apb[3] + apbp[1] + apbp[2]
    return float(2 * (total - 2))


def chsh_from_correlators(psi, setting: ChshSetting) -> float:
    psi = as_state(psi)
    return (
        correlator(psi, setting.a, setting.b)
        + correlator(psi, setting.a, setting.b_prime)
        + correlator(psi, setting.a_prime, setting.b)
        - correlator(psi, setting.a_prime, setting.b_prime)
    )


@dataclass(frozen=True)
class EmbeddingTargets:
    """Targets for pq, p+q-2pq and (1-p)(1-q)."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        vals = (self.c1, self.c2, self.c3)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("embedding targets must be finite")
        if min(vals) < TARGET_FLOOR:
            raise ValueError(f"negative embedding target in {vals}")
        if abs(sum(vals) - 1.0) > TARGET_SUM_TOL:
            raise ValueError(f"embedding targets sum to {sum(vals)!r}, not 1")

    @classmethod
    def from_quad(cls, quad) -> "EmbeddingTargets":
        p11, p12, p21, p22 = (float(x) for x in quad)
        return cls(p11, p12 + p21, p22)


@dataclass(frozen=True)
class EmbeddingResult:
    p: Optional[float] = None
    q: Optional[float] = None
    reason: Optional[str] = None
    discriminant: float = float("nan")

    @property
    def present(self) -> bool:
        return self.reason is None

    def __bool__(self):
        return self.present

    def as_dict(self) -> dict:
        if self.present:
            return {"present": True, "p": self.p, "q": self.q, "discriminant": self.discriminant}
        return {"present": False, "reason": self.reason, "discriminant": self.discriminant}


def classical_embedding_solve(targets: EmbeddingTargets) -> EmbeddingResult:
    """Find real p >= q in [0, 1] with pq = c1 and p + q = c2 + 2 c1, if any."""
    c1, c2, c3 = targets.c1, targets.c2, targets.c3
    s = c2 + 2 * c1
    disc = s * s - 4 * c1
    if disc < 0:
        # rounding on a repeated root, e.g. p = q, lands slightly below zero
        if disc < -EMBED_TOL:
            return EmbeddingResult(reason=NEGATIVE_DISCRIMINANT, discriminant=disc)
        disc = 0.0
    root = math.sqrt(disc)
    p, q = (s + root) / 2, (s - root) / 2
    if q < -EMBED_TOL or p > 1 + EMBED_TOL:
        return EmbeddingResult(reason=OUT_OF_RANGE, discriminant=disc)
    p, q = min(max(p, 0.0), 1.0), min(max(q, 0.0), 1.0)
    if abs(1 - s + c1 - c3) > EMBED_TOL:
        return EmbeddingResult(reason=INCONSISTENT, discriminant=disc)
    return EmbeddingResult(p=p, q=q, discriminant=disc)


def embedding_check_profile(game: GameMatrix, state, profile: StrategyProfile) -> EmbeddingResult:
    """Whether the outcome distribution at `profile` is that of a classical mixed pair.

    Only meaningful for games with beta == gamma, where both players'
    payoffs depend on the quad through (p11, p12 + p21, p22) alone.
    """
    if game.beta != game.gamma:
        raise ValueError(f"embedding needs beta == gamma, got beta={game.beta}, gamma={game.gamma}")
    quad = _quad(state, profile.a, profile.b)
    return classical_embedding_solve(EmbeddingTargets.from_quad(quad))
