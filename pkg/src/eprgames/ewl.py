"""The unitary-strategy quantization: players act with local U(theta, phi)
between an entangling gate J and its inverse, starting from |00>.

J = exp(i ent D(x)D / 2) with D = U(pi, 0). With this choice J|00> at
ent = pi/2 is (|00> + i|11>)/sqrt(2), the ent = 0 game is the classical one,
and (Q, Q) is an equilibrium of the prisoner's dilemma on the restricted set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .games import GameMatrix, PayoffPair, payoff_pair
from .qcore import TwoQubitState

HALF_PI = np.pi / 2
_SLACK = 1e-12


def _in_range(name, value, hi):
    value = float(value)
    if not np.isfinite(value) or value < -_SLACK or value > hi + _SLACK:
        raise ValueError(f"{name}={value} outside [0, {hi}]")
    return min(max(value, 0.0), hi)


@dataclass(frozen=True)
class EwlStrategy:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", _in_range("theta", self.theta, np.pi))
        object.__setattr__(self, "phi", _in_range("phi", self.phi, HALF_PI))

    def unitary(self) -> np.ndarray:
        return ewl_unitary(self.theta, self.phi)


class EwlProfile(NamedTuple):
    a: EwlStrategy
    b: EwlStrategy


def entanglement(ent) -> float:
    return _in_range("ent", ent, HALF_PI)


IDENTITY = EwlStrategy(0.0, 0.0)
DEFECT = EwlStrategy(np.pi, 0.0)
Q_HAT = EwlStrategy(0.0, HALF_PI)


def ewl_unitary(theta, phi) -> np.ndarray:
    """U(theta, phi); broadcasts, result shape ``broadcast + (2, 2)``."""
    theta = np.asarray(theta, dtype=float)
    e = np.exp(1j * np.asarray(phi, dtype=float))
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    c, s, e = np.broadcast_arrays(c, s, e)
    return np.stack(
        [np.stack([e * c, s + 0j], axis=-1), np.stack([-s + 0j, np.conj(e) * c], axis=-1)],
        axis=-2,
    )


_DD = np.kron(ewl_unitary(np.pi, 0.0), ewl_unitary(np.pi, 0.0)).real


def entangler(ent) -> np.ndarray:
    """J(ent). D(x)D squares to the identity, so the exponential is cos + i sin."""
    ent = entanglement(ent)
    return np.cos(ent / 2) * np.eye(4) + 1j * np.sin(ent / 2) * _DD


def _final_amps(ua, ub, ent) -> np.ndarray:
    """Final amplitudes for stacks of unitaries ua[..., 2, 2], ub[..., 2, 2]."""
    j = entangler(ent)
    start = j[:, 0]  # J|00>
    mid = np.einsum("...ik,...jl,kl->...ij", ua, ub, start.reshape(2, 2))
    return np.einsum("ki,...i->...k", j.conj(), mid.reshape(mid.shape[:-2] + (4,)))


def ewl_final_state(sa: EwlStrategy, sb: EwlStrategy, ent) -> TwoQubitState:
    return TwoQubitState(_final_amps(sa.unitary(), sb.unitary(), ent))


def _payoffs_from_amps(game, amps):
    return payoff_pair(game, np.abs(amps) ** 2)


def ewl_payoffs(game: GameMatrix, sa: EwlStrategy, sb: EwlStrategy, ent) -> PayoffPair:
    pi = _payoffs_from_amps(game, _final_amps(sa.unitary(), sb.unitary(), ent))
    return PayoffPair(float(pi.pi_a), float(pi.pi_b))


def ewl_grid(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Restricted-set grid: theta_i = i pi/(R-1), phi_j = (pi/2) j/(R-1)."""
    if resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    t = np.arange(resolution) * np.pi / (resolution - 1)
    p = np.arange(resolution) * HALF_PI / (resolution - 1)
    tt, pp = np.meshgrid(t, p, indexing="ij")
    return tt.ravel(), pp.ravel()


def ewl_best_response_gain(game: GameMatrix, profile, ent, player: str, grid_resolution: int = 64) -> float:
    """Best improvement a unilateral deviation on the grid gives `player`, floored at 0."""
    sa, sb = profile
    player = str(player).upper()
    if player not in ("A", "B"):
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")
    here = ewl_payoffs(game, sa, sb, ent)
    dev = ewl_unitary(*ewl_grid(grid_resolution))
    if player == "A":
        ub = np.broadcast_to(sb.unitary(), dev.shape)
        best = _payoffs_from_amps(game, _final_amps(dev, ub, ent)).pi_a.max()
        return max(0.0, float(best - here.pi_a))
    ua = np.broadcast_to(sa.unitary(), dev.shape)
    best = _payoffs_from_amps(game, _final_amps(ua, dev, ent)).pi_b.max()
    return max(0.0, float(best - here.pi_b))
