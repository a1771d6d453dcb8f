"""Phonon-induced pure dephasing: weak-coupling rate estimate and J(omega).

Only the low-temperature pure-dephasing limit of the exciton-phonon
coupling is modelled; it sets the scale of gamma_prime for a given drive.
The full polaron-transformed dynamics (phonon sidebands, renormalized Rabi
energies) is out of scope.
"""

from dataclasses import dataclass
import math

from .core import HBAR_UEV_PS, KB_UEV_PER_K

__all__ = ["PhononParams", "dephasing_rate", "spectral_function"]


@dataclass(frozen=True)
class PhononParams:
    """Coupling alpha (ps^2), lattice temperature (K) and cutoff omega_b (ueV)."""

    alpha: float = 0.1
    temperature: float = 4.2
    omega_b: float = 900.0

    def __post_init__(self):
        if self.alpha < 0.0:
            raise ValueError("alpha must be >= 0")
        if self.temperature <= 0.0:
            raise ValueError("temperature must be > 0")
        if self.omega_b <= 0.0:
            raise ValueError("omega_b must be > 0")


def dephasing_rate(ph: PhononParams, omega_rabi: float) -> float:
    """Drive-induced pure dephasing rate, pi * kB T * alpha * Omega^2, in ueV.

    Valid for a single resonant drive; for two-tone driving the effective
    Rabi energy is ambiguous and max(omega1, omega2) is a conservative
    choice for ``omega_rabi``.
    """
    kbt = KB_UEV_PER_K * ph.temperature / HBAR_UEV_PS           # rad/ps
    omega = omega_rabi / HBAR_UEV_PS                            # rad/ps
    rate = math.pi * kbt * ph.alpha * omega * omega             # rad/ps
    return rate * HBAR_UEV_PS                                   # ueV


def spectral_function(omega: float, ph: PhononParams) -> float:
    """Super-ohmic spectral function alpha * w^3 * exp(-w^2 / (2 w_b^2)).

    ``omega`` is supplied in ueV; the cubic prefactor is evaluated in
    angular units (rad/ps) so the returned density is a rate (1/ps).
    Zero for omega <= 0.
    """
    if omega <= 0.0:
        return 0.0
    w = omega / HBAR_UEV_PS
    return ph.alpha * w ** 3 * math.exp(-0.5 * (omega / ph.omega_b) ** 2)
