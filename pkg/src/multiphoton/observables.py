"""Photon-number diagnostics of a normalized field state."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock_space import FieldVector, photon_distribution

NORMALIZATION_TOL = 1e-8
MIN_MEAN = 1e-12


class UndefinedQError(ValueError):
    """Mandel Q is undefined for a state with (almost) no photons."""


@dataclass(frozen=True)
class ObservableRecord:
    mean_n: float
    q: float | None
    mode_n: int


def _moments(v: FieldVector) -> tuple[float, float]:
    probs = photon_distribution(v)
    total = probs.sum()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"field state is not normalized (norm^2 = {total:.12g})")
    n = np.arange(probs.size, dtype=float)
    return float(n @ probs), float((n * n) @ probs)


def mean_photon(v: FieldVector) -> float:
    """<a^dag a> for a unit-norm field."""
    return _moments(v)[0]


def mandel_q(v: FieldVector) -> float:
    """Mandel Q = (<n^2> - <n>^2) / <n> - 1.

    Raises:
        UndefinedQError: if <n> is below 1e-12.
    """
    mean, second = _moments(v)
    if mean < MIN_MEAN:
        raise UndefinedQError(f"Mandel Q undefined for mean photon number {mean:.3e}")
    # clip round-off so a number state gives exactly -1
    variance = max(second - mean * mean, 0.0)
    return variance / mean - 1.0


def observe(v: FieldVector) -> ObservableRecord:
    mean = mean_photon(v)
    try:
        q = mandel_q(v)
    except UndefinedQError:
        q = None
    return ObservableRecord(mean, q, int(np.argmax(photon_distribution(v))))
