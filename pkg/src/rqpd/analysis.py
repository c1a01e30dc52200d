"""Game-theoretic layer over the named strategy set S = {D, Q}.

Profiles are keyed "DD", "QD", "DQ", "QQ" (Alice's move first) and the
per-profile payoffs G1..G4 are the values at DD, QD, DQ, QQ in that
order.  For every profile in S each measurement probability, and hence
each payoff, is an affine function of sin^2(gamma); payoff differences
therefore cross zero at most once on [0, pi/2], which is what makes the
closed-form thresholds and the bisection oracle below well posed.

Thresholds are the gamma values where profile payoffs cross:

    gA12: alice(DD) = alice(QD)      gA34: alice(DQ) = alice(QQ)
    gB13: bob(DD)  = bob(DQ)         gB24: bob(QD)  = bob(QQ)

A player's strictly dominant strategy is D below both of their
thresholds, Q above both, and absent in between (the transition
region).  A threshold can be absent altogether, in which case the same
move dominates for every gamma.  Closed forms reproduce the PAPER
backend exactly; :func:`thresholds_numeric` is the independent
bisection cross-check and also serves the UNITARY backend.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

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
from .relativity import Backend, GameInstance, check_omega, coefficient_map

_HALF_PI = 0.5 * math.pi

#: Canonical profile order (Alice's move first); also the G1..G4 order.
PROFILES = ("DD", "QD", "DQ", "QQ")

#: Payoff comparisons within this distance count as ties.
DEFAULT_TIE_TOL = 1e-9

#: Bisection stops once the bracketing interval is narrower than this.
BISECTION_TOL = 1e-11
BISECTION_MAX_ITER = 200

# cos^2 - sin^2 cancellation leaves O(1e-16) dust in the threshold
# ratios at the omega = pi/2 endpoint; ratios this close to 0 or 1 are
# snapped so the endpoint thresholds come out exactly 0 or pi/2.
RATIO_DUST = 1e-13


class ConvergenceError(ArithmeticError):
    """Bisection failed to bracket a crossing to tolerance."""


class Region(enum.Enum):
    CLASSICAL = "classical"
    TRANSITION = "transition"
    QUANTUM = "quantum"


@dataclass(frozen=True)
class ProfileTable:
    """Payoff pairs for the four profiles over S = {D, Q}."""

    dd: PayoffPair
    qd: PayoffPair
    dq: PayoffPair
    qq: PayoffPair

    def pair(self, profile: str) -> PayoffPair:
        try:
            return getattr(self, profile.lower())
        except AttributeError:
            raise KeyError(f"unknown profile {profile!r}, expected one of {PROFILES}") from None

    def alice(self, profile: str) -> float:
        return self.pair(profile).alice

    def bob(self, profile: str) -> float:
        return self.pair(profile).bob


class SdsMargins(NamedTuple):
    """The four dominance margins: positive means D is strictly better."""

    a12: float  # alice(DD) - alice(QD)
    a34: float  # alice(DQ) - alice(QQ)
    b13: float  # bob(DD) - bob(DQ)
    b24: float  # bob(QD) - bob(QQ)


@dataclass(frozen=True)
class SdsReport:
    """Strictly dominant strategy per player: "D", "Q" or None."""

    alice: str | None
    bob: str | None
    margins: SdsMargins


@dataclass(frozen=True)
class NashReport:
    """Nash equilibria over S, in canonical profile order."""

    equilibria: tuple[str, ...]
    tie_tolerance: float


@dataclass(frozen=True)
class RegionLabel:
    """Per-player game region at one parameter point."""

    alice: Region
    bob: Region


@dataclass(frozen=True)
class ThresholdSet:
    """The four crossing gammas; None marks an absent crossing."""

    g_a12: float | None
    g_a34: float | None
    g_b13: float | None
    g_b24: float | None

    def as_dict(self) -> dict[str, float | None]:
        return {
            "gA12": self.g_a12,
            "gA34": self.g_a34,
            "gB13": self.g_b13,
            "gB24": self.g_b24,
        }


@dataclass(frozen=True)
class SweepRow:
    """Both players' profile payoffs at one gamma."""

    gamma: float
    a_dd: float
    a_qd: float
    a_dq: float
    a_qq: float
    b_dd: float
    b_qd: float
    b_dq: float
    b_qq: float


@dataclass(frozen=True)
class RegionMapRow:
    """Dominance-everywhere flags at one (omega_a, omega_b) grid point."""

    omega_a: float
    omega_b: float
    bob_always_d: bool
    alice_always_q: bool


def profile_table(g: GameInstance) -> ProfileTable:
    """Payoffs of all four S-profiles under the instance's backend."""
    matrix = coefficient_map(g).matrix
    pairs = {}
    for name in PROFILES:
        a = NamedStrategy[name[0]].params
        b = NamedStrategy[name[1]].params
        amplitudes = matrix @ k_coefficients(a, b, g.gamma).as_state()
        pr = JointProbabilities.from_amplitudes(amplitudes)
        pairs[name.lower()] = payoff_from_probabilities(pr, g.pay)
    return ProfileTable(**pairs)


def sds_of(table: ProfileTable, tie_tol: float = DEFAULT_TIE_TOL) -> SdsReport:
    """Strictly dominant strategies from a profile table.

    A move dominates only if it is strictly better against both of the
    opponent's moves, beyond the tie tolerance.
    """
    margins = SdsMargins(
        a12=table.alice("DD") - table.alice("QD"),
        a34=table.alice("DQ") - table.alice("QQ"),
        b13=table.bob("DD") - table.bob("DQ"),
        b24=table.bob("QD") - table.bob("QQ"),
    )
    alice = _dominant(margins.a12, margins.a34, tie_tol)
    bob = _dominant(margins.b13, margins.b24, tie_tol)
    return SdsReport(alice=alice, bob=bob, margins=margins)


def _dominant(vs_d: float, vs_q: float, tie_tol: float) -> str | None:
    if vs_d > tie_tol and vs_q > tie_tol:
        return "D"
    if vs_d < -tie_tol and vs_q < -tie_tol:
        return "Q"
    return None


def nash_set(table: ProfileTable, tie_tol: float = DEFAULT_TIE_TOL) -> NashReport:
    """Nash equilibria by best-response enumeration over the 2x2 bimatrix.

    Inequalities are weak at the tie tolerance, so exact crossing points
    report both neighboring profiles.
    """
    other = {"D": "Q", "Q": "D"}
    equilibria = []
    for profile in PROFILES:
        a, b = profile[0], profile[1]
        alice_ok = table.alice(profile) >= table.alice(other[a] + b) - tie_tol
        bob_ok = table.bob(profile) >= table.bob(a + other[b]) - tie_tol
        if alice_ok and bob_ok:
            equilibria.append(profile)
    return NashReport(equilibria=tuple(equilibria), tie_tolerance=tie_tol)


def _half_angle_squares(omega: float) -> tuple[float, float]:
    c = math.cos(0.5 * omega)
    s = math.sin(0.5 * omega)
    return c * c, s * s


def _arcsin_sqrt_ratio(num: float, den: float) -> float | None:
    if den <= 0.0:
        return None
    ratio = num / den
    if abs(ratio) <= RATIO_DUST:
        ratio = 0.0
    elif abs(ratio - 1.0) <= RATIO_DUST:
        ratio = 1.0
    if not 0.0 <= ratio <= 1.0:
        return None
    return math.asin(math.sqrt(ratio))


def thresholds_closed_form(omega_a: float, omega_b: float) -> ThresholdSet:
    """Closed-form crossing gammas for the default (5, 3, 1, 0) payoffs.

    Each threshold is arcsin(sqrt(ratio)) of a rational expression in
    the half-angle squares of the two Wigner angles; the crossing is
    absent when the ratio falls outside [0, 1] or the denominator is
    not positive.  Algebraically these are the PAPER-backend crossings.
    """
    check_omega(omega_a, "omega_a")
    check_omega(omega_b, "omega_b")
    c2a, s2a = _half_angle_squares(omega_a)
    c2b, s2b = _half_angle_squares(omega_b)

    num_a12 = c2a * c2b - 2 * s2a * s2b + 2 * c2a * s2b - s2a * c2b
    num_a34 = 2 * c2a * c2b - s2a * s2b + c2a * s2b - 2 * s2a * c2b
    den_a = 5 * c2a * c2b - 5 * s2a * s2b + 3 * c2a * s2b + 2 * s2a * c2b
    num_b13 = c2a * c2b - 2 * s2a * s2b - c2a * s2b + 2 * s2a * c2b
    num_b24 = 2 * c2a * c2b - s2a * s2b - 2 * c2a * s2b + s2a * c2b
    den_b = 5 * c2a * c2b - 5 * s2a * s2b - 3 * c2a * s2b - 2 * s2a * c2b

    return ThresholdSet(
        g_a12=_arcsin_sqrt_ratio(num_a12, den_a),
        g_a34=_arcsin_sqrt_ratio(num_a34, den_a),
        g_b13=_arcsin_sqrt_ratio(num_b13, den_b),
        g_b24=_arcsin_sqrt_ratio(num_b24, den_b),
    )


_PAIR_DIFFS = {
    "a12": lambda t: t.alice("DD") - t.alice("QD"),
    "a34": lambda t: t.alice("DQ") - t.alice("QQ"),
    "b13": lambda t: t.bob("DD") - t.bob("DQ"),
    "b24": lambda t: t.bob("QD") - t.bob("QQ"),
}


def thresholds_numeric(
    omega_a: float,
    omega_b: float,
    backend: Backend,
    pay: PayoffParams | None = None,
) -> ThresholdSet:
    """Crossing gammas by bisection through the full payoff pipeline.

    Because each payoff difference is affine in sin^2(gamma), a sign
    change between gamma = 0 and gamma = pi/2 brackets a unique root;
    no sign change means the crossing is absent.  Serves as the
    independent oracle for :func:`thresholds_closed_form` (PAPER
    backend) and is the only route to the UNITARY-backend crossings,
    which carry no closed form here.
    """
    pay = pay if pay is not None else PayoffParams()

    def diff(key: str, gamma: float) -> float:
        table = profile_table(GameInstance(gamma, omega_a, omega_b, pay, backend))
        return _PAIR_DIFFS[key](table)

    found = {key: _bisect_crossing(lambda x, k=key: diff(k, x)) for key in _PAIR_DIFFS}
    return ThresholdSet(
        g_a12=found["a12"], g_a34=found["a34"], g_b13=found["b13"], g_b24=found["b24"]
    )


def _bisect_crossing(f) -> float | None:
    lo, hi = 0.0, _HALF_PI
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return 0.0
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        return None
    for _ in range(BISECTION_MAX_ITER):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo < BISECTION_TOL:
            return 0.5 * (lo + hi)
    raise ConvergenceError(
        f"no convergence to {BISECTION_TOL} within {BISECTION_MAX_ITER} bisection steps"
    )


_REGION_OF_SDS = {"D": Region.CLASSICAL, "Q": Region.QUANTUM, None: Region.TRANSITION}


def region_classify(g: GameInstance, tie_tol: float = DEFAULT_TIE_TOL) -> RegionLabel:
    """Per-player region at the instance's gamma.

    Classical below both of the player's thresholds (D dominates),
    quantum above both (Q dominates), transition in between; computed
    from the dominance margins so it can never disagree with
    :func:`sds_of` at the same point.
    """
    report = sds_of(profile_table(g), tie_tol)
    return RegionLabel(
        alice=_REGION_OF_SDS[report.alice],
        bob=_REGION_OF_SDS[report.bob],
    )


def always_classical_scan(
    grid_n: int,
    backend: Backend,
    pay: PayoffParams | None = None,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> tuple[RegionMapRow, ...]:
    """Flags, per (omega_a, omega_b) grid point, dominance over all gamma.

    ``bob_always_d``: both of Bob's crossings are absent with D-favoring
    margins at gamma = 0 and pi/2 (affinity makes the endpoints
    decisive), so Bob's dominant move is D however entangled the game.
    ``alice_always_q``: the gA34 = 0 case; Alice's crossings sit at
    gamma = 0 so Q dominates for every positive gamma.
    """
    if grid_n < 2:
        raise ValueError(f"grid_n must be >= 2, got {grid_n}")
    pay = pay if pay is not None else PayoffParams()
    axis = np.linspace(0.0, _HALF_PI, grid_n)
    rows = []
    for omega_a in axis:
        for omega_b in axis:
            t0 = profile_table(GameInstance(0.0, omega_a, omega_b, pay, backend))
            t1 = profile_table(GameInstance(_HALF_PI, omega_a, omega_b, pay, backend))
            m0, m1 = sds_of(t0, tie_tol).margins, sds_of(t1, tie_tol).margins
            bob_always_d = all(m > tie_tol for m in (m0.b13, m0.b24, m1.b13, m1.b24))
            alice_always_q = (
                m0.a12 <= tie_tol
                and m0.a34 <= tie_tol
                and m1.a12 < -tie_tol
                and m1.a34 < -tie_tol
            )
            rows.append(
                RegionMapRow(
                    omega_a=float(omega_a),
                    omega_b=float(omega_b),
                    bob_always_d=bob_always_d,
                    alice_always_q=alice_always_q,
                )
            )
    return tuple(rows)


def sweep_gamma(
    omega_a: float,
    omega_b: float,
    n: int,
    backend: Backend,
    pay: PayoffParams | None = None,
) -> tuple[SweepRow, ...]:
    """Profile payoffs at n uniformly spaced gammas in [0, pi/2]."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    pay = pay if pay is not None else PayoffParams()
    rows = []
    for gamma in np.linspace(0.0, _HALF_PI, n):
        t = profile_table(GameInstance(float(gamma), omega_a, omega_b, pay, backend))
        rows.append(
            SweepRow(
                gamma=float(gamma),
                a_dd=t.dd.alice,
                a_qd=t.qd.alice,
                a_dq=t.dq.alice,
                a_qq=t.qq.alice,
                b_dd=t.dd.bob,
                b_qd=t.qd.bob,
                b_dq=t.dq.bob,
                b_qq=t.qq.bob,
            )
        )
    return tuple(rows)


def best_response_scan(
    g: GameInstance,
    opponent: StrategyParams | NamedStrategy,
    grid: tuple[int, int] = (181, 91),
    max_norm_defect: float = DEFAULT_MAX_NORM_DEFECT,
) -> tuple[StrategyParams, float]:
    """Alice's best response to a fixed Bob strategy on a (theta, phi) grid.

    Returns the argmax strategy and its payoff; ties break toward the
    smallest theta, then the smallest phi, so results are deterministic.
    """
    n_theta, n_phi = grid
    if n_theta < 2 or n_phi < 2:
        raise ValueError(f"grid dims must be >= 2, got {grid}")
    if isinstance(opponent, NamedStrategy):
        opponent = opponent.params
    matrix = coefficient_map(g).matrix
    best_params: StrategyParams | None = None
    best_payoff = -math.inf
    for theta in np.linspace(0.0, math.pi, n_theta):
        for phi in np.linspace(0.0, _HALF_PI, n_phi):
            candidate = StrategyParams(float(theta), float(phi))
            amplitudes = matrix @ k_coefficients(candidate, opponent, g.gamma).as_state()
            pr = JointProbabilities.from_amplitudes(amplitudes)
            value = payoff_from_probabilities(pr, g.pay, max_norm_defect).alice
            if value > best_payoff:
                best_payoff = value
                best_params = candidate
    assert best_params is not None
    return best_params, best_payoff


def entanglement_degree(gamma: float) -> float:
    """Concurrence of the entangled initial state; equals sin(gamma)."""
    check_gamma(gamma)
    a = entangler(gamma) @ qmat.basis_state(0)
    return 2.0 * abs(a[0] * a[3] - a[1] * a[2])
