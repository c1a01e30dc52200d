"""Non-relativistic fabric of the two-player quantum Prisoner's Dilemma.

A player's move is the single-qubit unitary

    U(theta, phi) = [[e^{i phi} cos(theta/2),  sin(theta/2)],
                     [-sin(theta/2),           e^{-i phi} cos(theta/2)]]

with theta in [0, pi] and phi in [0, pi/2].  The named strategies are
C = U(0, 0) (cooperate, identity), D = U(pi, 0) (defect, a real spin
flip; the sign convention above is load-bearing for every amplitude
downstream), and Q = U(0, pi/2) (a pure phase move).

The two carriers start in |CC>, get entangled by J(gamma) =
cos(gamma/2) I + i sin(gamma/2) (D (x) D), receive the players' moves,
and the resulting amplitudes in the (CC, CD, DC, DD) basis are the
k-coefficients.  :func:`k_coefficients` evaluates them in closed form
and must agree with the explicit matrix pipeline
``(U_A (x) U_B) J |CC>`` to 1e-12; the pipeline is the oracle.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qmat

_HALF_PI = 0.5 * math.pi

#: Dust half-width for probability clamping: values this far outside
#: [0, 1] are attributed to floating-point noise and clamped.
PROBABILITY_DUST = 1e-12

#: Default ceiling on the norm defect accepted when converting
#: probabilities into payoffs.
DEFAULT_MAX_NORM_DEFECT = 1e-6


class NumericIntegrityError(ArithmeticError):
    """A probability vector is too far from normalized to trust.

    Carries the offending ``defect`` so callers can report it.
    """

    def __init__(self, defect: float, limit: float):
        super().__init__(
            f"probability norm defect {defect:.3e} exceeds limit {limit:.3e}"
        )
        self.defect = defect
        self.limit = limit


def _require_finite_scalar(value: float, name: str) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class StrategyParams:
    """Angles (theta, phi) of a strategy unitary, range-checked."""

    theta: float
    phi: float

    def __post_init__(self):
        _require_finite_scalar(self.theta, "theta")
        _require_finite_scalar(self.phi, "phi")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi <= _HALF_PI:
            raise ValueError(f"phi must be in [0, pi/2], got {self.phi}")


class NamedStrategy(enum.Enum):
    """The three named moves C, D, Q."""

    C = "C"
    D = "D"
    Q = "Q"

    @property
    def params(self) -> StrategyParams:
        return _NAMED_PARAMS[self]


_NAMED_PARAMS = {
    NamedStrategy.C: StrategyParams(0.0, 0.0),
    NamedStrategy.D: StrategyParams(math.pi, 0.0),
    NamedStrategy.Q: StrategyParams(0.0, _HALF_PI),
}


@dataclass(frozen=True)
class PayoffParams:
    """Payoff table (t, r, p, s); default (5, 3, 1, 0).

    The dilemma ordering t > r > p > s is enforced unless
    ``allow_non_dilemma`` is set, which permits exploring arbitrary
    tables without touching core code.
    """

    t: float = 5.0
    r: float = 3.0
    p: float = 1.0
    s: float = 0.0
    allow_non_dilemma: bool = False

    def __post_init__(self):
        for name, value in (("t", self.t), ("r", self.r), ("p", self.p), ("s", self.s)):
            _require_finite_scalar(value, name)
        if not self.allow_non_dilemma and not (self.t > self.r > self.p > self.s):
            raise ValueError(
                f"payoffs must satisfy t > r > p > s, got "
                f"({self.t}, {self.r}, {self.p}, {self.s}); "
                "pass allow_non_dilemma=True to override"
            )


class PayoffPair(NamedTuple):
    """Expected payoffs (alice, bob) in payoff units."""

    alice: float
    bob: float


@dataclass(frozen=True)
class KVector:
    """Post-move amplitudes (k_cc, k_cd, k_dc, k_dd); unit norm."""

    k_cc: complex
    k_cd: complex
    k_dc: complex
    k_dd: complex

    def __post_init__(self):
        amps = (self.k_cc, self.k_cd, self.k_dc, self.k_dd)
        if not all(cmath.isfinite(a) for a in amps):
            raise ValueError("KVector amplitudes must be finite")
        total = sum(abs(a) ** 2 for a in amps)
        if abs(total - 1.0) > qmat.ATOL:
            raise ValueError(f"KVector norm^2 = {total!r}, expected 1 within {qmat.ATOL}")

    def as_state(self) -> np.ndarray:
        return qmat.state4((self.k_cc, self.k_cd, self.k_dc, self.k_dd))


def _clamp_probability(value: float) -> float:
    if 0.0 <= value <= 1.0:
        return value
    if -PROBABILITY_DUST <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + PROBABILITY_DUST:
        return 1.0
    raise ValueError(f"probability {value!r} outside [0, 1] beyond dust tolerance")


@dataclass(frozen=True)
class JointProbabilities:
    """Measurement probabilities over (CC, CD, DC, DD) plus norm defect.

    ``norm_defect`` is |sum - 1| recorded before the dust clamp, so a
    non-unitary pipeline stays observable even though the stored
    probabilities are clean.
    """

    p_cc: float
    p_cd: float
    p_dc: float
    p_dd: float
    norm_defect: float

    def __post_init__(self):
        _require_finite_scalar(self.norm_defect, "norm_defect")
        for name in ("p_cc", "p_cd", "p_dc", "p_dd"):
            object.__setattr__(self, name, _clamp_probability(getattr(self, name)))

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "JointProbabilities":
        """Squared magnitudes of a 4-amplitude vector, defect recorded first."""
        v = qmat.state4(amplitudes)
        raw = [float(abs(a) ** 2) for a in v]
        defect = abs(sum(raw) - 1.0)
        return cls(*raw, norm_defect=defect)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_cc, self.p_cd, self.p_dc, self.p_dd)


def strategy_unitary(s: StrategyParams | NamedStrategy) -> np.ndarray:
    """2x2 unitary U(theta, phi) for a strategy."""
    if isinstance(s, NamedStrategy):
        s = s.params
    ct = math.cos(0.5 * s.theta)
    st = math.sin(0.5 * s.theta)
    phase = cmath.exp(1j * s.phi)
    return qmat.mat2([[phase * ct, st], [-st, phase.conjugate() * ct]])


_DXD = qmat.tensor2(strategy_unitary(NamedStrategy.D), strategy_unitary(NamedStrategy.D))


def entangler(gamma: float) -> np.ndarray:
    """Entangling gate cos(gamma/2) I + i sin(gamma/2) (D (x) D).

    gamma in [0, pi/2] sets the initial entanglement; gamma = 0 is the
    classical game, gamma = pi/2 maximal entanglement.  Commutes with
    D (x) D and is unitary for every gamma.
    """
    check_gamma(gamma)
    return qmat.mat4(
        math.cos(0.5 * gamma) * np.eye(4, dtype=complex) + 1j * math.sin(0.5 * gamma) * _DXD
    )


def check_gamma(gamma: float) -> float:
    """Validate an entanglement angle in [0, pi/2]."""
    _require_finite_scalar(gamma, "gamma")
    if not 0.0 <= gamma <= _HALF_PI:
        raise ValueError(f"gamma must be in [0, pi/2], got {gamma}")
    return gamma


def k_coefficients(a: StrategyParams, b: StrategyParams, gamma: float) -> KVector:
    """Closed-form amplitudes of ``(U_A (x) U_B) J(gamma) |CC>``.

    Uses half-angle shorthand c_x = cos(x/2), s_x = sin(x/2).
    """
    if isinstance(a, NamedStrategy):
        a = a.params
    if isinstance(b, NamedStrategy):
        b = b.params
    check_gamma(gamma)
    ca, sa = math.cos(0.5 * a.theta), math.sin(0.5 * a.theta)
    cb, sb = math.cos(0.5 * b.theta), math.sin(0.5 * b.theta)
    cg, sg = math.cos(0.5 * gamma), math.sin(0.5 * gamma)
    ea, eb = cmath.exp(1j * a.phi), cmath.exp(1j * b.phi)
    k_cc = ea * eb * ca * cb * cg + 1j * sa * sb * sg
    k_cd = -ea * ca * sb * cg + 1j * eb.conjugate() * sa * cb * sg
    k_dc = -eb * sa * cb * cg + 1j * ea.conjugate() * ca * sb * sg
    k_dd = sa * sb * cg + 1j * (ea * eb).conjugate() * ca * cb * sg
    return KVector(k_cc, k_cd, k_dc, k_dd)


def payoff_from_probabilities(
    pr: JointProbabilities,
    pay: PayoffParams,
    max_norm_defect: float = DEFAULT_MAX_NORM_DEFECT,
) -> PayoffPair:
    """Expected payoffs from joint probabilities.

    alice = r P_CC + p P_DD + t P_DC + s P_CD and bob mirrors t and s.
    Raises :class:`NumericIntegrityError` when the recorded norm defect
    exceeds ``max_norm_defect``.
    """
    if pr.norm_defect > max_norm_defect:
        raise NumericIntegrityError(pr.norm_defect, max_norm_defect)
    alice = pay.r * pr.p_cc + pay.p * pr.p_dd + pay.t * pr.p_dc + pay.s * pr.p_cd
    bob = pay.r * pr.p_cc + pay.p * pr.p_dd + pay.s * pr.p_dc + pay.t * pr.p_cd
    return PayoffPair(alice, bob)


def classical_table(pay: PayoffParams) -> dict[tuple[str, str], PayoffPair]:
    """Classical Prisoner's Dilemma bimatrix over {C, D}.

    Sanity anchor for the gamma = 0, omega = 0 limit of the quantum game.
    """
    return {
        ("C", "C"): PayoffPair(pay.r, pay.r),
        ("C", "D"): PayoffPair(pay.s, pay.t),
        ("D", "C"): PayoffPair(pay.t, pay.s),
        ("D", "D"): PayoffPair(pay.p, pay.p),
    }
