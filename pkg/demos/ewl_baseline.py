"""The unitary-strategy scheme on the same game, for comparison.

At full entanglement (Q, Q) pays (3, 3) and no restricted deviation helps,
while (identity, identity), the classical mutual cooperation, is exploitable.
"""

import numpy as np

from eprgames import PRISONERS_DILEMMA as PD
from eprgames.ewl import DEFECT, IDENTITY, Q_HAT, ewl_best_response_gain, ewl_payoffs

for ent in (0.0, np.pi / 4, np.pi / 2):
    for name, prof in [("Q,Q", (Q_HAT, Q_HAT)), ("I,I", (IDENTITY, IDENTITY)), ("D,D", (DEFECT, DEFECT))]:
        pay = ewl_payoffs(PD, *prof, ent)
        gain = ewl_best_response_gain(PD, prof, ent, "A", 32)
        print(f"ent={ent:.3f} {name}: payoffs ({pay.pi_a:.3f}, {pay.pi_b:.3f}), Alice's best gain {gain:.3f}")
