"""Unit system, physical constants and the shared domain types.

Conventions used throughout the package:

* every energy (Rabi energies, detunings, decay rates) is in ueV,
* every time is in ps,
* angular frequencies in rad/ps are obtained as energy / hbar,
* the two-level basis is ordered (x, g), i.e. index 0 is the excited
  state |x> and index 1 is the ground state |g>.
"""

from dataclasses import dataclass, field
import math

import numpy as np

#: hbar in ueV*ps (CODATA: 6.582119569e-16 eV*s).
HBAR_UEV_PS = 658.2119569

#: Boltzmann constant in ueV/K (CODATA: 8.617333262e-5 eV/K).
KB_UEV_PER_K = 86.17333262


@dataclass(frozen=True)
class UnitSystem:
    """Fixed energy/time unit system (ueV, ps)."""

    hbar: float = HBAR_UEV_PS
    kb: float = KB_UEV_PER_K


UNITS = UnitSystem()


def energy_to_angular(energy_uev: float) -> float:
    """Convert an energy in ueV to an angular frequency in rad/ps."""
    return energy_uev / HBAR_UEV_PS


def angular_to_energy(omega_rad_ps: float) -> float:
    """Convert an angular frequency in rad/ps to an energy in ueV."""
    return omega_rad_ps * HBAR_UEV_PS


class DegenerateDriveError(ValueError):
    """Raised for a degenerate-frequency drive (both lasers at one frequency)."""


# Pauli-type operators in the (x, g) basis.  sigma^- = |g><x| lowers the
# exciton into the ground state: its single nonzero entry is at row g, col x.
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
PROJ_X = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


def ground_state() -> np.ndarray:
    """Density matrix |g><g|."""
    return np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)


def excited_state() -> np.ndarray:
    """Density matrix |x><x|."""
    return np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class DriveParams:
    """Two-tone drive: Rabi energies, detunings and relative phase.

    ``delta1 = omega_x - omega_1`` and ``delta2 = omega_x - omega_2`` are the
    detunings of the two lasers from the emitter (ueV).  All dynamics are
    expressed in the frame rotating at the first laser; ``frame_origin`` is
    optional metadata recording the absolute frequency of that frame.
    ``phi`` is the relative phase of drive 2 at t = 0 (radians).
    """

    omega1: float
    omega2: float
    delta1: float = 0.0
    delta2: float = 0.0
    phi: float = 0.0
    frame_origin: float = 0.0

    def __post_init__(self):
        if not (self.omega1 >= 0.0):
            raise ValueError(f"omega1 must be >= 0, got {self.omega1}")
        if not (self.omega2 >= 0.0):
            raise ValueError(f"omega2 must be >= 0, got {self.omega2}")
        for name in ("omega1", "omega2", "delta1", "delta2", "phi"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def delta(self) -> float:
        """Beat frequency Delta = delta1 - delta2 = omega_2 - omega_1 (ueV)."""
        return self.delta1 - self.delta2

    @property
    def alpha_c(self) -> float:
        """Drive-strength ratio omega2/omega1; requires omega1 > 0."""
        if self.omega1 <= 0.0:
            raise ValueError("alpha_c is defined only for omega1 > 0")
        return self.omega2 / self.omega1

    @property
    def period(self) -> float:
        """Beat period T = 2*pi*hbar/|Delta| in ps; requires Delta != 0."""
        if self.delta == 0.0:
            raise DegenerateDriveError(
                "degenerate-frequency drive: Delta = 0 has no finite beat period"
            )
        return 2.0 * math.pi * HBAR_UEV_PS / abs(self.delta)

    @property
    def energy_scale(self) -> float:
        """Largest energy scale of the drive terms (ueV), at least > 0 guard."""
        return max(self.omega1, self.omega2, abs(self.delta1), abs(self.delta2))


def derived_quantities(p: DriveParams) -> tuple[float, float, float]:
    """Return (Delta, alpha_c, T) for a drive parameter set.

    Raises :class:`DegenerateDriveError` when Delta = 0 (callers must switch
    to the time-independent steady-state path) and ``ValueError`` when
    omega1 = 0 (alpha_c undefined).
    """
    return p.delta, p.alpha_c, p.period


@dataclass(frozen=True)
class DissipationParams:
    """Radiative decay rate gamma and pure dephasing rate gamma_prime (ueV)."""

    gamma: float
    gamma_prime: float = 0.0

    def __post_init__(self):
        if not (self.gamma >= 0.0):
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if not (self.gamma_prime >= 0.0):
            raise ValueError(f"gamma_prime must be >= 0, got {self.gamma_prime}")

    @property
    def total_rate(self) -> float:
        return self.gamma + self.gamma_prime


def hermiticity_defect(rho: np.ndarray) -> float:
    """Max-element norm of rho - rho^dagger."""
    return float(np.abs(rho - rho.conj().T).max())


def density_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of a 2x2 Hermitian(ized) density matrix, ascending."""
    h = 0.5 * (rho + rho.conj().T)
    a = h[0, 0].real
    d = h[1, 1].real
    b = h[0, 1]
    m = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), abs(b))
    return np.array([m - r, m + r])


def is_valid_density(rho: np.ndarray, herm_tol: float = 1e-12,
                     trace_tol: float = 1e-10, eig_floor: float = -1e-9) -> bool:
    """Check Hermiticity (relative), unit trace and positivity of a 2x2 state."""
    scale = max(float(np.abs(rho).max()), 1e-300)
    if hermiticity_defect(rho) > herm_tol * scale:
        return False
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        return False
    return bool(density_eigenvalues(rho)[0] >= eig_floor)


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-major vectorization: [rho_xx, rho_gx, rho_xg, rho_gg]."""
    return np.asarray(rho, dtype=complex).flatten(order="F")


def unvectorize(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    return np.asarray(v, dtype=complex).reshape(2, 2, order="F")
