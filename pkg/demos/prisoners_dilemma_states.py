"""Prisoner's dilemma played by choosing measurement directions.

On the product state the game is just the classical mixed game in disguise;
on the two entangled presets the payoffs collapse to a single correlation
term and cooperation-like outcomes become stable.
"""

import numpy as np

from eprgames import PRISONERS_DILEMMA as PD
from eprgames import StrategyProfile, certify_nash, classical_nash_2x2, mixed_from_profile, quantum_payoff

print("classical equilibria:", [(n.p_star, n.q_star) for n in classical_nash_2x2(PD)])

# On the product state a direction (theta, phi) plays S1 with probability (1 + sin theta cos phi)/2.
defect = StrategyProfile.from_angles(np.pi / 2, np.pi, np.pi / 2, np.pi)
print("product state, both point along -x:", quantum_payoff(PD, "product-uniform", defect))
print("  same as classical p, q =", tuple(float(x) for x in mixed_from_profile(*defect.angles)))
print("  certified:", certify_nash("product-uniform", PD, defect).is_nash)

# Maximally entangled: the payoff is (9 - E)/4 where E is the outcome correlation.
for ta, tb in [(0, 0), (0, np.pi)]:
    prof = StrategyProfile.from_angles(ta, 0, tb, 0)
    cert = certify_nash("maxent-i", PD, prof)
    print(f"maxent, thetas ({ta:.2f}, {tb:.2f}): payoffs {tuple(cert.payoffs)}, "
          f"gains ({cert.max_gain_a:.3f}, {cert.max_gain_b:.3f}), NE={cert.is_nash}")
