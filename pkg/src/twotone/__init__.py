"""Resonance fluorescence of a two-level emitter under two-tone driving.

A numpy/scipy library for the incoherent emission spectrum of a two-level
system driven by two coherent fields of arbitrary strength and detuning,
together with the Floquet quasienergy ladder that labels every spectral
line.  Energies are in ueV, times in ps throughout.
"""

__version__ = "0.1.0"

from .core import (
    HBAR_UEV_PS,
    KB_UEV_PER_K,
    UNITS,
    DegenerateDriveError,
    DissipationParams,
    DriveParams,
    UnitSystem,
    angular_to_energy,
    derived_quantities,
    energy_to_angular,
)
from .dynamics import (
    PropagatorConfig,
    SteadyCycle,
    StateInvalidError,
    SteadyStateError,
    hamiltonian_at,
    liouvillian_at,
    periodic_steady_state,
    propagate,
    stationary_state,
)
from .spectrum import (
    CorrelationTrace,
    SpectrumTrace,
    TailNotConvergedError,
    incoherent_spectrum,
    spectrum_from_correlation,
    time_averaged_correlation,
    two_time_correlation,
)
from .floquet import (
    FloquetConfig,
    FloquetResult,
    ReducedParams,
    build_floquet_matrix,
    central_quasienergies,
    char_poly_residual,
    eta_factor,
    floquet_overlay,
    floquet_result,
    fold_to_zone,
    monodromy_quasienergies,
    quasienergies,
    transition_frequencies,
)
from .phonon import PhononParams, dephasing_rate, spectral_function
from .analysis import Peak, convolve_lorentzian, find_peaks, mirror_residual, peak_weight
from .config import ConfigError, RunConfig, SweepSpec, parse_config
from .pipeline import SweepResult, run_spectrum, run_sweep

__all__ = [name for name in dir() if not name.startswith("_")]
