"""When a quantum payoff pair cannot come from any classical mixed strategy.

The entangled state violates CHSH at the profile below, and the outcome
distribution there has no real (p, q) behind it: the quadratic for q has a
negative discriminant.
"""

import numpy as np

from eprgames import ChshSetting, GameMatrix, StrategyProfile, chsh_lambda, embedding_check_profile

q = np.pi / 4
setting = ChshSetting.from_angles([q, q, 3 * q, q, 2 * q, q, q, q])
for state in ("maxent-i", "entangled-asym", "product-uniform"):
    lam = chsh_lambda(state, setting)
    print(f"{state:16s} lambda = {lam:+.5f}  violated={abs(lam) > 2}")

game = GameMatrix(3, 0, 0, 1)  # embedding needs beta == gamma
prof = StrategyProfile.from_angles(q, q, 2 * q, q)
for state in ("maxent-i", "product-uniform"):
    res = embedding_check_profile(game, state, prof)
    print(state, res.as_dict())
