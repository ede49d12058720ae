"""Schmidt decomposition of the atom-field state and conditional atom measurements.

With <c|s> = r exp(-i phi) and 2W = <c|c> - <s|s>, the rotated atomic basis

    |+> = cos(theta)|e> + exp(-i phi) sin(theta)|g>
    |-> = exp(i phi) sin(theta)|e> - cos(theta)|g>

diagonalizes the reduced atomic state, with weights
lambda_pm = 1/2 +- sqrt(W^2 + r^2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fock_space import FieldVector, inner_product
from .jc_dynamics import AtomFieldState

NORMALIZATION_TOL = 1e-8
PHASE_THRESHOLD = 1e-14
MIN_PROBABILITY = 1e-12


class Outcome(enum.Enum):
    SCHMIDT_PLUS = "SchmidtPlus"
    SCHMIDT_MINUS = "SchmidtMinus"
    EXCITED = "Excited"
    GROUND = "Ground"

    @classmethod
    def parse(cls, text: str) -> Outcome:
        """Accept the value ("SchmidtPlus") or the member name ("schmidt_plus")."""
        for member in cls:
            if text == member.value or text.upper() == member.name:
                return member
        choices = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown outcome {text!r}; expected one of {choices}")


class ZeroProbabilityError(ValueError):
    """The requested measurement outcome cannot occur."""

    def __init__(self, outcome: Outcome, probability: float):
        self.outcome = outcome
        self.probability = probability
        super().__init__(
            f"outcome {outcome.value} has probability {probability:.3e}; "
            "there is no post-measurement state"
        )


@dataclass(frozen=True)
class SchmidtData:
    r: float
    phi: float
    w: float
    theta: float
    lambda_plus: float
    lambda_minus: float
    psi_plus: FieldVector
    psi_minus: FieldVector | None


@dataclass(frozen=True)
class MeasurementResult:
    outcome: Outcome
    probability: float
    post_state: FieldVector


def _require_normalized(state: AtomFieldState) -> None:
    total = state.norm_squared()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"atom-field state is not normalized (norm^2 = {total:.12g})")


def overlap_params(state: AtomFieldState) -> tuple[float, float, float]:
    """Return (r, phi, W) from the branch overlaps.

    r = |<c|s>|, phi = -arg <c|s> (0 when r < 1e-14), W = (<c|c> - <s|s>)/2.
    """
    _require_normalized(state)
    cs = inner_product(state.excited, state.ground)
    r = abs(cs)
    phi = -math.atan2(cs.imag, cs.real) if r >= PHASE_THRESHOLD else 0.0
    # atan2 lands on -pi for a negative real overlap; keep phi in (-pi, pi]
    if phi <= -math.pi:
        phi += 2 * math.pi
    w = 0.5 * (state.p_excited - state.p_ground)
    return r, phi, w


def mixing_angle(r: float, w: float) -> float:
    """theta = atan2(r, W) / 2, in [0, pi/2].

    The two-argument form makes the |+> combination the dominant Schmidt
    vector for either sign of W.
    """
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    if r == 0 and w == 0:
        return 0.0
    return 0.5 * math.atan2(r, w)


def schmidt_decompose(state: AtomFieldState) -> SchmidtData:
    """Schmidt weights and field vectors of ``state``.

    ``psi_minus`` is None when lambda_minus < 1e-12 (product state).
    """
    r, phi, w = overlap_params(state)
    theta = mixing_angle(r, w)
    radius = math.hypot(w, r)
    # hypot can overshoot 1/2 by an ulp for product states
    lambda_plus = min(0.5 + radius, 1.0)
    lambda_minus = max(0.5 - radius, 0.0)

    c = state.excited.amplitudes
    s = state.ground.amplitudes
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    phase = complex(math.cos(phi), math.sin(phi))

    psi_plus = FieldVector((cos_t * c + phase * sin_t * s) / math.sqrt(lambda_plus))
    psi_minus = None
    if lambda_minus >= MIN_PROBABILITY:
        psi_minus = FieldVector(
            (phase.conjugate() * sin_t * c - cos_t * s) / math.sqrt(lambda_minus)
        )
    return SchmidtData(r, phi, w, theta, lambda_plus, lambda_minus, psi_plus, psi_minus)


def conditional_project(state: AtomFieldState, outcome: Outcome | str) -> MeasurementResult:
    """Measure the exiting atom and return the outcome probability and field state.

    Raises:
        ZeroProbabilityError: if the outcome has probability below 1e-12.
    """
    if isinstance(outcome, str):
        outcome = Outcome.parse(outcome)
    _require_normalized(state)

    if outcome is Outcome.EXCITED or outcome is Outcome.GROUND:
        branch = state.excited if outcome is Outcome.EXCITED else state.ground
        prob = min(branch.norm_squared(), 1.0)
        if prob < MIN_PROBABILITY:
            raise ZeroProbabilityError(outcome, prob)
        return MeasurementResult(outcome, prob, branch.normalized())

    data = schmidt_decompose(state)
    if outcome is Outcome.SCHMIDT_PLUS:
        return MeasurementResult(outcome, data.lambda_plus, data.psi_plus)
    if data.psi_minus is None:
        raise ZeroProbabilityError(outcome, data.lambda_minus)
    return MeasurementResult(outcome, data.lambda_minus, data.psi_minus)


def atomic_density_matrix(state: AtomFieldState) -> np.ndarray:
    """Reduced atomic state in the (|e>, |g>) basis."""
    c, s = state.excited, state.ground
    return np.array(
        [
            [inner_product(c, c), inner_product(s, c)],
            [inner_product(c, s), inner_product(s, s)],
        ]
    )
