"""Single- and two-qubit state arithmetic for spin measurements along a direction.

Eigenstates use the half-angle parametrization

    |+1> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    |-1> = sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>

which is defined everywhere on the sphere, including the poles, and differs
from the sqrt(1 +/- a_z) form only by a global phase.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

# Slack allowed on theta before it is treated as out of range. Values inside
# the slack are clipped to [0, pi].
THETA_SLACK = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class Direction:
    """Measurement axis in polar form, theta in [0, pi], phi in [0, 2pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (np.isfinite(theta) and np.isfinite(phi)):
            raise ValueError(f"non-finite direction angles ({theta}, {phi})")
        if theta < -THETA_SLACK or theta > np.pi + THETA_SLACK:
            raise ValueError(f"theta={theta} outside [0, pi]")
        theta = min(max(theta, 0.0), np.pi)
        phi = phi % TWO_PI
        # -0.0 % 2pi and tiny negatives can round up to exactly 2pi
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def cartesian(self) -> np.ndarray:
        return polar_to_cartesian(self)

    def __iter__(self):
        yield self.theta
        yield self.phi


@dataclass(frozen=True)
class StrategyProfile:
    """A pair of directions, Alice's first."""

    a: Direction
    b: Direction

    @classmethod
    def from_angles(cls, theta_a, phi_a, theta_b, phi_b) -> "StrategyProfile":
        return cls(Direction(theta_a, phi_a), Direction(theta_b, phi_b))

    @property
    def angles(self) -> tuple[float, float, float, float]:
        return (self.a.theta, self.a.phi, self.b.theta, self.b.phi)


def polar_to_cartesian(d: Direction) -> np.ndarray:
    st = np.sin(d.theta)
    return np.array([st * np.cos(d.phi), st * np.sin(d.phi), np.cos(d.theta)])


def sigma_dot_n(d: Direction) -> np.ndarray:
    """The observable sigma . n for the unit vector n along `d`."""
    ax, ay, az = polar_to_cartesian(d)
    return np.array([[az, ax - 1j * ay], [ax + 1j * ay, -az]], dtype=complex)


def spin_eigenstate(theta, phi, outcome: int) -> np.ndarray:
    """Eigenvector of sigma . n with eigenvalue `outcome` (+1 or -1).

    `theta` and `phi` may be arrays; the result has shape ``broadcast + (2,)``.
    """
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")
    theta = np.asarray(theta, dtype=float)
    phase = np.exp(1j * np.asarray(phi, dtype=float))
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    if outcome == 1:
        comps = (c + 0j, phase * s)
    else:
        comps = (s + 0j, -phase * c)
    comps = np.broadcast_arrays(*comps)
    return np.stack(comps, axis=-1)


def eigenbasis(theta, phi) -> np.ndarray:
    """Both eigenvectors stacked as ``[..., outcome, component]``; outcome 0 is +1."""
    return np.stack([spin_eigenstate(theta, phi, 1), spin_eigenstate(theta, phi, -1)], axis=-2)


class TwoQubitState:
    """Normalized state over the basis |00>, |01>, |10>, |11>.

    Construction rejects vectors whose squared norm is off by more than `tol`.
    """

    __slots__ = ("_amps",)

    def __init__(self, amps, tol: float = 1e-10):
        amps = np.array(amps, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > tol:
            raise ValueError(f"state not normalized: sum |amp|^2 = {norm2!r}")
        amps.setflags(write=False)
        self._amps = amps

    @classmethod
    def normalized(cls, amps) -> "TwoQubitState":
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        return cls(amps / np.linalg.norm(amps))

    @classmethod
    def product(cls, left, right) -> "TwoQubitState":
        return cls(np.kron(np.asarray(left, dtype=complex), np.asarray(right, dtype=complex)))

    @property
    def amps(self) -> np.ndarray:
        return self._amps

    def matrix(self) -> np.ndarray:
        """Amplitudes as a 2x2 array indexed [alice bit, bob bit]."""
        return self._amps.reshape(2, 2)

    def __array__(self, dtype=None, copy=None):
        return np.array(self._amps, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, TwoQubitState):
            return NotImplemented
        return bool(np.array_equal(self._amps, other._amps))

    def __hash__(self):
        return hash(self._amps.tobytes())

    def __repr__(self):
        return f"TwoQubitState({np.array2string(self._amps, precision=6)})"


def joint_eigenstate(a: Direction, m: int, b: Direction, n: int) -> TwoQubitState:
    return TwoQubitState.product(
        spin_eigenstate(a.theta, a.phi, m), spin_eigenstate(b.theta, b.phi, n)
    )


def projection_probability(psi, basis_ket) -> float:
    """|<basis_ket|psi>|^2."""
    return float(abs(np.vdot(np.asarray(basis_ket), np.asarray(psi))) ** 2)
