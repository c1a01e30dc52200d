"""Moving-frame stage of the game: Wigner rotations and final probabilities.

The arbiter boosts along x while Alice's carrier moves along +z and
Bob's along -z, so each carrier's spin picks up a Wigner rotation whose
angle follows from the arbiter rapidity alpha and the player rapidity
delta:

    Omega = arctan( sinh(alpha) sinh(delta) / (cosh(alpha) + cosh(delta)) )

Omega is the authoritative relativistic input everywhere; speeds are
convenience converters through :func:`rapidity_from_speed` only.

The final amplitudes are (coefficient map) @ (k-coefficients).  Two
backends realize the coefficient map:

* ``Backend.UNITARY``: adjoint(J(gamma)) @ (R_A (x) R_B), exactly
  unitary for all parameters.  The physics default.
* ``Backend.PAPER``: the same matrix assembled entrywise from the four
  omega amplitudes in a fixed sign pattern.  It agrees with UNITARY in
  every entry except (2,4) and (3,4) (1-indexed), where it carries
  -omega3 and -omega2 instead of -omega3* and +omega2*, and is
  therefore not globally unitary.  It is kept because the closed-form
  payoff-crossing thresholds in :mod:`rqpd.analysis` are algebraically
  consistent with exactly these entries, so figure-style outputs
  default to it.

On the named strategy set {D, Q}^2 both backends yield probability
vectors that sum to 1; off that set the PAPER backend can leak norm,
which is recorded (never hidden) in ``JointProbabilities.norm_defect``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import qmat
from .game_core import (
    DEFAULT_MAX_NORM_DEFECT,
    JointProbabilities,
    NamedStrategy,
    PayoffPair,
    PayoffParams,
    StrategyParams,
    check_gamma,
    entangler,
    k_coefficients,
    payoff_from_probabilities,
)

_HALF_PI = 0.5 * math.pi


class Backend(enum.Enum):
    """Selectable realization of the final coefficient map."""

    PAPER = "paper"
    UNITARY = "unitary"


def rapidity_from_speed(v: float) -> float:
    """Rapidity artanh(v) for a speed v in [0, 1) (fraction of c)."""
    if not math.isfinite(v):
        raise ValueError(f"speed must be finite, got {v!r}")
    if not 0.0 <= v < 1.0:
        raise ValueError(f"speed must be in [0, 1), got {v}")
    return math.atanh(v)


def speed_from_rapidity(rapidity: float) -> float:
    """Inverse of :func:`rapidity_from_speed`."""
    if not math.isfinite(rapidity) or rapidity < 0.0:
        raise ValueError(f"rapidity must be finite and >= 0, got {rapidity!r}")
    return math.tanh(rapidity)


def wigner_angle(alpha: float, delta: float) -> float:
    """Wigner rotation angle from the arbiter and player rapidities.

    Symmetric in its arguments, zero iff either rapidity is zero, and
    strictly increasing in each argument while the other is positive.
    """
    for name, value in (("alpha", alpha), ("delta", delta)):
        if not math.isfinite(value) or value < 0.0:
            raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
    return math.atan(math.sinh(alpha) * math.sinh(delta) / (math.cosh(alpha) + math.cosh(delta)))


def check_omega(omega: float, name: str = "omega") -> float:
    """Validate a Wigner angle in [0, pi/2]."""
    if not math.isfinite(omega):
        raise ValueError(f"{name} must be finite, got {omega!r}")
    if not 0.0 <= omega <= _HALF_PI:
        raise ValueError(f"{name} must be in [0, pi/2], got {omega}")
    return omega


def spin_rotation_pair(omega_a: float, omega_b: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-player Wigner spin rotations (R_A, R_B).

    The senses are opposite (R_B is the transpose of R_A at the same
    angle) because Alice's carrier moves along +z and Bob's along -z;
    this is the unique sign choice under which adjoint(J) (R_A (x) R_B)
    reproduces rows 1 and 4 of the PAPER coefficient map entry for
    entry.
    """
    check_omega(omega_a, "omega_a")
    check_omega(omega_b, "omega_b")
    ca, sa = math.cos(0.5 * omega_a), math.sin(0.5 * omega_a)
    cb, sb = math.cos(0.5 * omega_b), math.sin(0.5 * omega_b)
    r_a = qmat.mat2([[ca, -sa], [sa, ca]])
    r_b = qmat.mat2([[cb, sb], [-sb, cb]])
    return r_a, r_b


@dataclass(frozen=True)
class GameInstance:
    """One fully specified game: angles, payoff table, backend."""

    gamma: float
    omega_a: float
    omega_b: float
    pay: PayoffParams = field(default_factory=PayoffParams)
    backend: Backend = Backend.UNITARY

    def __post_init__(self):
        check_gamma(self.gamma)
        check_omega(self.omega_a, "omega_a")
        check_omega(self.omega_b, "omega_b")
        if not isinstance(self.backend, Backend):
            raise ValueError(f"backend must be a Backend, got {self.backend!r}")


@dataclass(frozen=True, eq=False)
class CoefficientMap:
    """The 4x4 map from k-coefficients to final amplitudes, tagged."""

    matrix: np.ndarray
    backend: Backend
    omega_a: float
    omega_b: float
    gamma: float


def paper_coefficient_matrix(gamma: float, omega_a: float, omega_b: float) -> np.ndarray:
    """The PAPER-backend matrix, assembled entrywise from the omegas.

    Unlike :class:`GameInstance`, the omegas here only need to be
    finite: the closed-form array is also the diagnostic object for
    probing its non-unitarity, whose sharpest witness points lie
    outside the game's [0, pi/2] omega domain.
    """
    check_gamma(gamma)
    for name, value in (("omega_a", omega_a), ("omega_b", omega_b)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    cg, sg = math.cos(0.5 * gamma), math.sin(0.5 * gamma)
    ca, sa = math.cos(0.5 * omega_a), math.sin(0.5 * omega_a)
    cb, sb = math.cos(0.5 * omega_b), math.sin(0.5 * omega_b)
    w1 = cg * ca * cb + 1j * sg * sa * sb
    w2 = cg * ca * sb + 1j * sg * sa * cb
    w3 = cg * sa * cb + 1j * sg * ca * sb
    w4 = cg * sa * sb + 1j * sg * ca * cb
    w2c, w3c = w2.conjugate(), w3.conjugate()
    return qmat.mat4(
        [
            [w1, w2c, -w3c, -w4],
            [-w2c, w1, w4, -w3],
            [w3c, w4, w1, -w2],
            [-w4, w3c, -w2c, w1],
        ]
    )


def coefficient_map(g: GameInstance) -> CoefficientMap:
    """Coefficient map for a game instance under its selected backend."""
    if g.backend is Backend.UNITARY:
        r_a, r_b = spin_rotation_pair(g.omega_a, g.omega_b)
        matrix = qmat.mat4(qmat.adjoint(entangler(g.gamma)) @ qmat.tensor2(r_a, r_b))
    else:
        matrix = paper_coefficient_matrix(g.gamma, g.omega_a, g.omega_b)
    return CoefficientMap(
        matrix=matrix,
        backend=g.backend,
        omega_a=g.omega_a,
        omega_b=g.omega_b,
        gamma=g.gamma,
    )


def joint_probabilities(
    g: GameInstance,
    a: StrategyParams | NamedStrategy,
    b: StrategyParams | NamedStrategy,
) -> JointProbabilities:
    """Measurement probabilities for a strategy pair under an instance.

    A norm defect (possible under ``Backend.PAPER`` away from the named
    strategy set) is recorded on the result, not raised here.
    """
    cmap = coefficient_map(g)
    k = k_coefficients(a, b, g.gamma)
    return JointProbabilities.from_amplitudes(cmap.matrix @ k.as_state())


def payoffs(
    g: GameInstance,
    a: StrategyParams | NamedStrategy,
    b: StrategyParams | NamedStrategy,
    max_norm_defect: float = DEFAULT_MAX_NORM_DEFECT,
) -> PayoffPair:
    """Expected payoffs for a strategy pair under an instance."""
    return payoff_from_probabilities(joint_probabilities(g, a, b), g.pay, max_norm_defect)
