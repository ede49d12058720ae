"""Multiphoton addition and subtraction by conditional atom measurements."""

from .fock_space import (
    CutoffError,
    FieldVector,
    coherent_state,
    default_cutoff,
    fock_state,
    inner_product,
    photon_distribution,
)
from .jc_dynamics import (
    AtomFieldState,
    evolve_closed_form,
    evolve_excited_coherent,
    evolve_oracle,
    hamiltonian_matrix,
)
from .observables import ObservableRecord, UndefinedQError, mandel_q, mean_photon, observe
from .schmidt_measure import (
    MeasurementResult,
    Outcome,
    SchmidtData,
    ZeroProbabilityError,
    conditional_project,
    mixing_angle,
    overlap_params,
    schmidt_decompose,
)
from .sweep_engine import (
    Peak,
    ScalingRecord,
    SweepRow,
    alpha_scaling_scan,
    find_peaks,
    find_troughs,
    sweep_time,
)

__version__ = "0.1.0"
