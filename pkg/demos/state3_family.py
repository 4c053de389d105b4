"""A one-parameter-per-player family of stationary profiles on
(|00> + |01> - |10> + |11>)/2, and which of them are real equilibria.

Along the family the payoff depends only on the sign of sin(phi_a) sin(phi_b),
so the (phi_a, phi_b) plane splits into quadrant patches with two values.
"""

import numpy as np

from eprgames import PRISONERS_DILEMMA as PD
from eprgames import certify_nash, family_payoff_state3, ne_family_state3

for phis in [(np.pi / 4, 3 * np.pi / 4), (np.pi / 4, np.pi / 4), (np.pi / 4, -np.pi / 4)]:
    sol = ne_family_state3(*phis, PD)
    cert = certify_nash("entangled-asym", PD, sol.profile)
    print(f"phi* = ({phis[0]:+.4f}, {phis[1]:+.4f}) -> theta* = ({sol.theta_a:.5f}, {sol.theta_b:.5f}), "
          f"payoff {sol.payoffs.pi_a:.3f}, NE={cert.is_nash}")

phis = (np.arange(8) + 0.5) * 2 * np.pi / 8
grid = family_payoff_state3(phis[:, None], phis[None, :], PD.delta1, PD.delta2)
print("\nfamily payoff on an 8x8 grid of (phi_a, phi_b):")
print(np.array2string(grid, precision=2))
