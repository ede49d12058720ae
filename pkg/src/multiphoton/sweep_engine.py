"""Sweeps of the measurement pipeline over interaction time and field amplitude."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .fock_space import FieldVector, coherent_state, default_cutoff
from .jc_dynamics import AtomFieldState, evolve_closed_form
from .observables import UndefinedQError, mandel_q, mean_photon
from .schmidt_measure import schmidt_decompose

DEFAULT_TAU_END = 15.0
DEFAULT_STEPS = 1500
PHOTON_PROMINENCE = 0.5
PROBABILITY_PROMINENCE = 0.02


@dataclass(frozen=True)
class SweepRow:
    tau: float
    p_excited: float
    p_ground: float
    lambda_plus: float
    lambda_minus: float
    r: float
    w: float
    theta: float
    phi: float
    n_plus: float
    n_minus: float | None
    q_plus: float | None
    q_minus: float | None

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def values(self) -> list[float | None]:
        return [getattr(self, name) for name in self.columns()]


@dataclass(frozen=True)
class Peak:
    tau_at: float
    value: float
    prominence: float
    index: int


@dataclass(frozen=True)
class ScalingRecord:
    alpha: float
    first_peak_tau: float | None
    n_plus_peak: float | None
    delta_n: float | None

    @property
    def has_peak(self) -> bool:
        return self.first_peak_tau is not None


def _safe_q(v: FieldVector) -> float | None:
    try:
        return mandel_q(v)
    except UndefinedQError:
        return None


def row_for_field(field: FieldVector, tau: float) -> SweepRow:
    """Evolve (field, |e>) to ``tau`` and summarize the Schmidt measurement."""
    state = evolve_closed_form(AtomFieldState.excited_atom(field), tau)
    data = schmidt_decompose(state)
    if data.psi_minus is None:
        n_minus = q_minus = None
    else:
        n_minus = mean_photon(data.psi_minus)
        q_minus = _safe_q(data.psi_minus)
    return SweepRow(
        tau=float(tau),
        p_excited=state.p_excited,
        p_ground=state.p_ground,
        lambda_plus=data.lambda_plus,
        lambda_minus=data.lambda_minus,
        r=data.r,
        w=data.w,
        theta=data.theta,
        phi=data.phi,
        n_plus=mean_photon(data.psi_plus),
        n_minus=n_minus,
        q_plus=_safe_q(data.psi_plus),
        q_minus=q_minus,
    )


def evaluate_row(alpha: complex, tau: float, n_max: int | None = None) -> SweepRow:
    return row_for_field(coherent_state(alpha, n_max), tau)


def time_grid(tau_start: float, tau_end: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps}")
    if not tau_start < tau_end:
        raise ValueError(f"need tau_start < tau_end, got {tau_start} and {tau_end}")
    if tau_start < 0:
        raise ValueError(f"tau_start must be non-negative, got {tau_start}")
    return np.linspace(tau_start, tau_end, steps)


def sweep_time(
    alpha: complex,
    n_max: int | None = None,
    tau_start: float = 0.0,
    tau_end: float = DEFAULT_TAU_END,
    steps: int = DEFAULT_STEPS,
    workers: int = 1,
) -> list[SweepRow]:
    """One :class:`SweepRow` per point of a uniform grid including both ends.

    Rows are independent; with ``workers > 1`` they are computed in a thread
    pool but always returned in grid order.
    """
    grid = time_grid(tau_start, tau_end, steps)
    field = coherent_state(alpha, n_max)
    if workers <= 1:
        return [row_for_field(field, tau) for tau in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda tau: row_for_field(field, tau), grid))


def _prominence(values: np.ndarray, start: int, stop: int) -> float:
    """Topographic prominence of the plateau values[start:stop]."""
    height = values[start]
    left = start - 1
    left_min = height
    while left >= 0 and values[left] <= height:
        left_min = min(left_min, values[left])
        left -= 1
    right = stop
    right_min = height
    while right < values.size and values[right] <= height:
        right_min = min(right_min, values[right])
        right += 1
    return float(height - max(left_min, right_min))


def _parabolic_vertex(x, y) -> tuple[float, float]:
    (x0, x1, x2), (y0, y1, y2) = x, y
    d0, d2 = x0 - x1, x2 - x1
    s0, s2 = (y0 - y1) / d0, (y2 - y1) / d2
    curvature = (s2 - s0) / (d2 - d0)
    if curvature >= 0:
        return float(x1), float(y1)
    slope = s0 - curvature * d0
    shift = -slope / (2 * curvature)
    # a vertex outside the bracketing points means the fit is not trustworthy
    if not d0 < shift < d2:
        return float(x1), float(y1)
    return float(x1 + shift), float(y1 + slope * shift + curvature * shift * shift)


def find_peaks(series, min_prominence: float) -> list[Peak]:
    """Interior local maxima of a (tau, value) series with enough prominence.

    A flat top counts as one maximum, reported at its first point. Each
    peak's position and height are refined with a parabola through the
    discrete maximum and its two neighbours.
    """
    data = np.asarray(series, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("series must be a sequence of (tau, value) pairs")
    if data.shape[0] < 3:
        raise ValueError("need at least 3 points to find peaks")
    if min_prominence <= 0:
        raise ValueError("min_prominence must be positive")
    taus, values = data[:, 0], data[:, 1]
    if np.any(np.diff(taus) <= 0):
        raise ValueError("series must be sorted by strictly increasing tau")

    peaks = []
    i = 1
    n = values.size
    while i < n - 1:
        if values[i] > values[i - 1]:
            end = i + 1
            while end < n and values[end] == values[i]:
                end += 1
            if end < n and values[end] < values[i]:
                prom = _prominence(values, i, end)
                if prom >= min_prominence:
                    tau_at, value = _parabolic_vertex(taus[i - 1 : i + 2], values[i - 1 : i + 2])
                    peaks.append(Peak(tau_at, value, prom, i))
            i = end
        else:
            i += 1
    return peaks


def alpha_scaling_scan(
    alphas,
    tau_end: float = DEFAULT_TAU_END,
    steps: int = DEFAULT_STEPS,
    min_prominence: float = PHOTON_PROMINENCE,
) -> list[ScalingRecord]:
    """First photon-number peak of the |+> conditioned field for each alpha.

    ``delta_n`` is the peak mean photon number minus the initial |alpha|^2.
    """
    records = []
    for alpha in alphas:
        if not alpha > 0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        rows = sweep_time(alpha, default_cutoff(alpha), 0.0, tau_end, steps)
        peaks = find_peaks(n_plus_series(rows), min_prominence)
        if not peaks:
            records.append(ScalingRecord(float(alpha), None, None, None))
            continue
        first = peaks[0]
        records.append(
            ScalingRecord(float(alpha), first.tau_at, first.value, first.value - abs(alpha) ** 2)
        )
    return records



def column_series(rows: list[SweepRow], name: str) -> np.ndarray:
    """(tau, value) pairs for one column; rows with an empty cell are skipped."""
    if name not in SweepRow.columns():
        raise KeyError(name)
    pairs = [(row.tau, getattr(row, name)) for row in rows]
    return np.array([p for p in pairs if p[1] is not None], dtype=float)


def n_plus_series(rows: list[SweepRow]) -> np.ndarray:
    return column_series(rows, "n_plus")


def find_troughs(series, min_prominence: float) -> list[Peak]:
    """Local minima, reported as :class:`Peak` with the original sign of ``value``."""
    data = np.array(series, dtype=float)
    data[:, 1] *= -1
    return [Peak(p.tau_at, -p.value, p.prominence, p.index) for p in find_peaks(data, min_prominence)]
