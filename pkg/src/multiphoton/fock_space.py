"""Truncated Fock-space field states.

A field is stored as a dense vector of complex amplitudes over the number
states |0>, ..., |n_max>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Constructors and projections must hand back unit vectors to this precision.
NORM_TOL = 1e-12
# Largest truncated coherent-state tail we accept before renormalizing.
MAX_TAIL_MASS = 1e-9


class CutoffError(ValueError):
    """Raised when a Fock-space cutoff is too small for the requested state."""


@dataclass(frozen=True, eq=False)
class FieldVector:
    """Cavity field amplitudes <n|psi> for n = 0..n_max.

    The amplitudes are copied into a read-only complex array on
    construction. Branch states of the entangled atom-field state are
    FieldVectors too, so the norm is not enforced here.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex, copy=True).reshape(-1)
        if amps.size == 0:
            raise ValueError("a FieldVector needs at least one amplitude")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def normalized(self) -> FieldVector:
        norm = math.sqrt(self.norm_squared())
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FieldVector(self.amplitudes / norm)

    def __len__(self):
        return self.amplitudes.size

    def __repr__(self):
        return f"FieldVector(n_max={self.n_max}, norm^2={self.norm_squared():.6g})"


def default_cutoff(alpha: complex) -> int:
    """Fock cutoff that leaves less than 1e-12 of a coherent state's mass outside.

    n_max = max(32, ceil(|alpha|^2 + 12 sqrt(|alpha|^2 + 1))).
    """
    mean = abs(alpha) ** 2
    return max(32, math.ceil(mean + 12.0 * math.sqrt(mean + 1.0)))


def _coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    # a_n = a_{n-1} alpha / sqrt(n); avoids n! overflow past n = 170
    amps = np.empty(n_max + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, n_max + 1):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return amps


def coherent_state(alpha: complex, n_max: int | None = None) -> FieldVector:
    """Coherent state |alpha> truncated at ``n_max`` and renormalized.

    Args:
        alpha: complex coherent amplitude; the mean photon number is |alpha|^2.
        n_max: Fock cutoff. Defaults to :func:`default_cutoff`.

    Raises:
        CutoffError: if more than 1e-9 of the Poisson mass lies above ``n_max``.
    """
    if n_max is None:
        n_max = default_cutoff(alpha)
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    amps = _coherent_amplitudes(alpha, n_max)
    kept = float(np.vdot(amps, amps).real)
    tail = 1.0 - kept
    if tail > MAX_TAIL_MASS:
        raise CutoffError(
            f"n_max={n_max} truncates {tail:.3e} of the coherent state with "
            f"|alpha|={abs(alpha):g}; use at least {default_cutoff(alpha)}"
        )
    return FieldVector(amps / math.sqrt(kept))


def fock_state(n: int, n_max: int) -> FieldVector:
    """Number state |n> in a space truncated at ``n_max``."""
    if not 0 <= n <= n_max:
        raise ValueError(f"Fock index {n} outside 0..{n_max}")
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[n] = 1.0
    return FieldVector(amps)


def inner_product(u: FieldVector, v: FieldVector) -> complex:
    """<u|v>, antilinear in the first argument."""
    if u.n_max != v.n_max:
        raise ValueError(f"dimension mismatch: n_max {u.n_max} vs {v.n_max}")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def photon_distribution(v: FieldVector) -> np.ndarray:
    """P_n = |<n|v>|^2. Sums to the squared norm of ``v``."""
    return np.abs(v.amplitudes) ** 2
