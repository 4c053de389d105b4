"""Two-player 2x2 games played by choosing spin measurement directions on a
shared two-qubit state, with the unitary-strategy scheme as a baseline."""

from .qcore import (
    Direction,
    StrategyProfile,
    TwoQubitState,
    eigenbasis,
    joint_eigenstate,
    polar_to_cartesian,
    projection_probability,
    sigma_dot_n,
    spin_eigenstate,
)
from .games import (
    CLOSED_FORMS,
    PRESET_STATES,
    PRISONERS_DILEMMA,
    GameMatrix,
    OutcomeProbabilities,
    PayoffPair,
    classical_mixed,
    closed_payoff_maxent,
    closed_payoff_product,
    closed_payoff_state3,
    joint_probabilities,
    max_term_discrepancies,
    mixed_from_profile,
    payoff_evaluator,
    preset_state,
    quad_probabilities,
    quantum_payoff,
    verify_term_reduction,
)
from .equilibria import (
    MixedNash,
    NashCertificate,
    best_response_gain,
    certify_nash,
    classical_nash_2x2,
    family_payoff_state3,
    ne_conditions_maxent,
    ne_conditions_state3,
    ne_family_state3,
    scan_nash,
)
from .bell import (
    ChshSetting,
    EmbeddingResult,
    EmbeddingTargets,
    chsh_lambda,
    classical_embedding_solve,
    correlator,
    embedding_check_profile,
)
from .ewl import (
    EwlStrategy,
    ewl_best_response_gain,
    ewl_final_state,
    ewl_payoffs,
    ewl_unitary,
    entangler,
)

__version__ = "0.1.0"
