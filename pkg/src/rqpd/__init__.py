"""Relativistic two-player quantum Prisoner's Dilemma engine.

Simulates the full game pipeline (entangling gate, strategy unitaries,
per-player Wigner rotations, disentangling and measurement) and the
game-theoretic analysis on top of it: strict dominance, Nash equilibria
over the named strategy set, crossing thresholds in the entanglement
angle, and the region maps behind figure-style sweeps.
"""

from .analysis import (
    ConvergenceError,
    NashReport,
    ProfileTable,
    PROFILES,
    Region,
    RegionLabel,
    RegionMapRow,
    SdsMargins,
    SdsReport,
    SweepRow,
    ThresholdSet,
    always_classical_scan,
    best_response_scan,
    entanglement_degree,
    nash_set,
    profile_table,
    region_classify,
    sds_of,
    sweep_gamma,
    thresholds_closed_form,
    thresholds_numeric,
)
from .game_core import (
    JointProbabilities,
    KVector,
    NamedStrategy,
    NumericIntegrityError,
    PayoffPair,
    PayoffParams,
    StrategyParams,
    classical_table,
    entangler,
    k_coefficients,
    payoff_from_probabilities,
    strategy_unitary,
)
from .relativity import (
    Backend,
    CoefficientMap,
    GameInstance,
    coefficient_map,
    joint_probabilities,
    paper_coefficient_matrix,
    payoffs,
    rapidity_from_speed,
    speed_from_rapidity,
    spin_rotation_pair,
    wigner_angle,
)

__version__ = "0.1.0"

__all__ = [
    "Backend",
    "CoefficientMap",
    "ConvergenceError",
    "GameInstance",
    "JointProbabilities",
    "KVector",
    "NamedStrategy",
    "NashReport",
    "NumericIntegrityError",
    "PROFILES",
    "PayoffPair",
    "PayoffParams",
    "ProfileTable",
    "Region",
    "RegionLabel",
    "RegionMapRow",
    "SdsMargins",
    "SdsReport",
    "StrategyParams",
    "SweepRow",
    "ThresholdSet",
    "always_classical_scan",
    "best_response_scan",
    "classical_table",
    "coefficient_map",
    "entangler",
    "entanglement_degree",
    "joint_probabilities",
    "k_coefficients",
    "nash_set",
    "paper_coefficient_matrix",
    "payoff_from_probabilities",
    "payoffs",
    "profile_table",
    "rapidity_from_speed",
    "region_classify",
    "sds_of",
    "speed_from_rapidity",
    "spin_rotation_pair",
    "strategy_unitary",
    "sweep_gamma",
    "thresholds_closed_form",
    "thresholds_numeric",
    "wigner_angle",
]
