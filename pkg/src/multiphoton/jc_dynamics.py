"""Resonant Jaynes-Cummings evolution of a two-level atom and one cavity mode.

The state is kept as two field branches: the field attached to the excited
atom and the field attached to the ground atom,

    |psi> = |c>|e> + |s>|g>.

Time only ever enters through the scaled time tau = lambda * t.

Truncation: |e, n_max> would couple to |g, n_max + 1>, which is outside the
space. That level is frozen, exactly as in :func:`hamiltonian_matrix`, so the
closed-form propagator and the matrix oracle act on the same finite space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock_space import FieldVector, coherent_state


@dataclass(frozen=True)
class AtomFieldState:
    """Pure atom-field state as (excited branch |c>, ground branch |s>)."""

    excited: FieldVector
    ground: FieldVector
    tau: float = 0.0

    def __post_init__(self):
        if self.excited.n_max != self.ground.n_max:
            raise ValueError(
                f"branch dimension mismatch: {self.excited.n_max} vs {self.ground.n_max}"
            )

    @property
    def n_max(self) -> int:
        return self.excited.n_max

    @property
    def p_excited(self) -> float:
        return self.excited.norm_squared()

    @property
    def p_ground(self) -> float:
        return self.ground.norm_squared()

    def norm_squared(self) -> float:
        return self.p_excited + self.p_ground

    def to_vector(self) -> np.ndarray:
        """Stack into the product basis [|e,0..n_max>, |g,0..n_max>]."""
        return np.concatenate([self.excited.amplitudes, self.ground.amplitudes])

    @classmethod
    def from_vector(cls, vec, tau: float = 0.0) -> AtomFieldState:
        vec = np.asarray(vec)
        if vec.ndim != 1 or vec.size % 2:
            raise ValueError("product-basis vector must have even length")
        half = vec.size // 2
        return cls(FieldVector(vec[:half]), FieldVector(vec[half:]), tau)

    @classmethod
    def excited_atom(cls, field: FieldVector) -> AtomFieldState:
        """Atom in |e>, field in ``field``."""
        return cls(field, FieldVector(np.zeros(field.dim, dtype=complex)), 0.0)


def _check_tau(tau: float) -> None:
    if not np.isfinite(tau) or tau < 0:
        raise ValueError(f"tau must be finite and non-negative, got {tau}")


def evolve_closed_form(initial: AtomFieldState, tau: float) -> AtomFieldState:
    """Apply the operator-valued 2x2 propagator for scaled time ``tau``.

    Each pair (|e,n>, |g,n+1>) rotates with angle tau*sqrt(n+1):

        e'_n     =    cos(tau sqrt(n+1)) e_n - i sin(tau sqrt(n+1)) g_{n+1}
        g'_{n+1} = -i sin(tau sqrt(n+1)) e_n +   cos(tau sqrt(n+1)) g_{n+1}

    |g,0> is untouched (the London phase operator annihilates the vacuum)
    and |e,n_max> is frozen by the truncation. The output's ``tau`` is the
    input's plus ``tau``.
    """
    _check_tau(tau)
    e = initial.excited.amplitudes
    g = initial.ground.amplitudes
    n_max = initial.n_max

    angle = tau * np.sqrt(np.arange(1, n_max + 1))
    cos, sin = np.cos(angle), np.sin(angle)

    new_e = e.copy()
    new_g = g.copy()
    new_e[:n_max] = cos * e[:n_max] - 1j * sin * g[1:]
    new_g[1:] = -1j * sin * e[:n_max] + cos * g[1:]
    return AtomFieldState(FieldVector(new_e), FieldVector(new_g), initial.tau + tau)


def evolve_excited_coherent(alpha: complex, tau: float, n_max: int | None = None) -> AtomFieldState:
    """Evolve (|alpha>, |e>) to time ``tau``.

    Gives |c> with c_n = cos(tau sqrt(n+1)) a_n and |s> with
    s_{n+1} = -i sin(tau sqrt(n+1)) a_n, s_0 = 0.
    """
    field = coherent_state(alpha, n_max)
    return evolve_closed_form(AtomFieldState.excited_atom(field), tau)


def hamiltonian_matrix(n_max: int) -> np.ndarray:
    """Interaction Hamiltonian in units of the Rabi frequency.

    Basis order is [|e,0>, ..., |e,n_max>, |g,0>, ..., |g,n_max>]; the only
    nonzero elements are <e,n|H|g,n+1> = <g,n+1|H|e,n> = sqrt(n+1).
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    dim = n_max + 1
    h = np.zeros((2 * dim, 2 * dim), dtype=complex)
    for n in range(n_max):
        h[n, dim + n + 1] = h[dim + n + 1, n] = np.sqrt(n + 1)
    return h


def evolve_oracle(initial: AtomFieldState, tau: float) -> AtomFieldState:
    """Reference evolution exp(-i H tau) by diagonalizing the full Hamiltonian.

    Deliberately shares nothing with :func:`evolve_closed_form` beyond the
    basis layout; used to check it.
    """
    _check_tau(tau)
    if tau == 0:
        return AtomFieldState(initial.excited, initial.ground, initial.tau)
    energies, vecs = np.linalg.eigh(hamiltonian_matrix(initial.n_max))
    coeffs = vecs.conj().T @ initial.to_vector()
    out = vecs @ (np.exp(-1j * energies * tau) * coeffs)
    return AtomFieldState.from_vector(out, initial.tau + tau)
