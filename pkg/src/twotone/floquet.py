"""Truncated Floquet eigenproblem of the two-tone drive.

The time-periodic rotating-frame Hamiltonian is expanded in harmonics of
the beat frequency Delta; the resulting block-tridiagonal Hermitian matrix
(2x2 blocks, one per harmonic n = N..-N) yields quasienergies whose
differences locate every potential spectral line.  Quasienergies are only
defined modulo Delta, so comparisons across truncation orders or against
the one-period propagator fold values into the zone [-|Delta|/2, |Delta|/2).
"""

from dataclasses import dataclass
import cmath
import math

import numpy as np

from .core import HBAR_UEV_PS, SIGMA_MINUS, DriveParams
from .eigensolver import hermitian_eigh
from .integrator import integrate

__all__ = [
    "FloquetConfig",
    "FloquetResult",
    "ReducedParams",
    "build_floquet_matrix",
    "quasienergies",
    "floquet_result",
    "transition_frequencies",
    "floquet_overlay",
    "char_poly_residual",
    "eta_factor",
    "fold_to_zone",
    "central_quasienergies",
    "monodromy_quasienergies",
]


@dataclass(frozen=True)
class FloquetConfig:
    """Harmonic truncation order N; matrix dimension is M = 2(2N+1)."""

    order: int = 3

    def __post_init__(self):
        if not (0 <= self.order <= 50):
            raise ValueError(f"order must be in [0, 50], got {self.order}")

    @property
    def dimension(self) -> int:
        return 2 * (2 * self.order + 1)

    @property
    def harmonics(self) -> np.ndarray:
        """Block harmonic indices in matrix order (descending n)."""
        return np.arange(self.order, -self.order - 1, -1)


@dataclass(frozen=True)
class FloquetResult:
    """Quasienergies, Fourier-coefficient eigenvectors and transition set."""

    quasienergies: np.ndarray   # ascending, ueV
    eigenvectors: np.ndarray    # column lambda = Fourier coefficients
    transitions: np.ndarray     # deduplicated sorted differences, ueV
    harmonics: np.ndarray       # block index n of each coefficient row pair


@dataclass(frozen=True)
class ReducedParams:
    """Detunings in units of the primary Rabi energy (requires omega1 > 0)."""

    d1_t: float
    d_t: float

    @classmethod
    def from_drive(cls, p: DriveParams) -> "ReducedParams":
        if p.omega1 <= 0.0:
            raise ValueError("reduced parameters require omega1 > 0")
        return cls(d1_t=p.delta1 / p.omega1, d_t=p.delta / p.omega1)


def build_floquet_matrix(p: DriveParams, cfg: FloquetConfig) -> np.ndarray:
    """Hermitian M x M matrix of the harmonic-expanded problem (ueV).

    Diagonal 2x2 blocks are Hbar + n*Delta (Hbar the time-averaged
    Hamiltonian); the only off-diagonal coupling sits in the m - n = +-1
    blocks and carries omega2/2 with the drive-2 phase.
    """
    n_ord = cfg.order
    m_dim = cfg.dimension
    h = np.zeros((m_dim, m_dim), dtype=complex)
    hbar_block = np.array([[p.delta1, 0.5 * p.omega1], [0.5 * p.omega1, 0.0]],
                          dtype=complex)
    coup = 0.5 * p.omega2 * cmath.exp(1j * p.phi) * SIGMA_MINUS
    ns = cfg.harmonics
    for i, n in enumerate(ns):
        h[2 * i:2 * i + 2, 2 * i:2 * i + 2] = hbar_block + n * p.delta * np.eye(2)
        if i + 1 < len(ns):  # ns[i] - ns[i+1] == 1
            h[2 * i:2 * i + 2, 2 * (i + 1):2 * (i + 1) + 2] = coup
            h[2 * (i + 1):2 * (i + 1) + 2, 2 * i:2 * i + 2] = coup.conj().T
    return h


def quasienergies(p: DriveParams, cfg: FloquetConfig) -> np.ndarray:
    """Ascending quasienergies of the truncated problem (ueV)."""
    w, _ = hermitian_eigh(build_floquet_matrix(p, cfg))
    return w


def _dedup_sorted(values: np.ndarray, tol: float) -> np.ndarray:
    """Cluster sorted values closer than tol; one representative per cluster."""
    if values.size == 0:
        return values
    out = []
    start = 0
    for i in range(1, values.size + 1):
        if i == values.size or values[i] - values[i - 1] > tol:
            out.append(values[start:i].mean())
            start = i
    return np.array(out)


def dedup_tolerance(p: DriveParams) -> float:
    return 1e-9 * max(p.omega1, abs(p.delta), 1.0)


def transition_frequencies(p: DriveParams, cfg: FloquetConfig) -> np.ndarray:
    """All quasienergy differences, deduplicated and sorted (ueV rel. to laser 1)."""
    w = quasienergies(p, cfg)
    diffs = np.sort(np.subtract.outer(w, w).ravel())
    return _dedup_sorted(diffs, dedup_tolerance(p))


def floquet_result(p: DriveParams, cfg: FloquetConfig) -> FloquetResult:
    """Full eigenproblem: quasienergies, eigenvectors and transitions."""
    h = build_floquet_matrix(p, cfg)
    w, v = hermitian_eigh(h)
    diffs = np.sort(np.subtract.outer(w, w).ravel())
    return FloquetResult(
        quasienergies=w,
        eigenvectors=v,
        transitions=_dedup_sorted(diffs, dedup_tolerance(p)),
        harmonics=cfg.harmonics,
    )


def floquet_overlay(p: DriveParams, cfg: FloquetConfig, omega_rel_grid) -> np.ndarray:
    """Transition frequencies clipped to the frequency window of a grid."""
    grid = np.asarray(omega_rel_grid, dtype=float)
    if grid.size == 0:
        return np.empty(0)
    tr = transition_frequencies(p, cfg)
    lo, hi = float(grid.min()), float(grid.max())
    return tr[(tr >= lo) & (tr <= hi)]


def char_poly_residual(omega_t: float, rp: ReducedParams, alpha_c: float) -> float:
    """Pole-cleared characteristic residual of the N = 1 problem.

    Evaluates the order-1 characteristic equation with the resolvent factor
    beta multiplied through by its denominator g, so the expression is a
    polynomial in the reduced frequency.  It vanishes at every N = 1
    quasienergy (in units of omega1) and at the two roots of g itself.
    """
    w = omega_t
    d1 = rp.d1_t
    dd = rp.d_t
    a2 = alpha_c * alpha_c
    g = (1.0 + d1 * d1) - 4.0 * (w + dd - 0.5 * d1) ** 2
    big_a = 1.0 - 4.0 * (dd - w) * (d1 + dd - w)
    gf = g * (1.0 + 4.0 * w * (d1 - w)) + 4.0 * a2 * (w + dd) * (d1 - w)
    gb = a2 * (w + dd) + g * w
    return g * (gf * big_a + 4.0 * a2 * gb * (d1 + dd - w))


def eta_factor(omega1: float, delta1: float) -> float:
    """Splitting reduction of a detuned primary drive: 1 - d1/sqrt(O1^2+d1^2)."""
    if omega1 <= 0.0:
        raise ValueError("eta_factor requires omega1 > 0")
    return 1.0 - delta1 / math.hypot(omega1, delta1)


def fold_to_zone(values, delta: float) -> np.ndarray:
    """Fold energies into the first zone [-|Delta|/2, |Delta|/2)."""
    if delta == 0.0:
        raise ValueError("folding requires a nonzero beat frequency")
    ad = abs(delta)
    return np.mod(np.asarray(values, dtype=float) + 0.5 * ad, ad) - 0.5 * ad


def central_quasienergies(p: DriveParams, cfg: FloquetConfig) -> np.ndarray:
    """The two best-converged quasienergies, folded into the first zone.

    Eigenvalues are tracked by block lineage: the two eigenvectors with the
    largest weight on the central (n = 0) harmonic block are the converged
    representatives of the system's two quasienergy residues.
    """
    res = floquet_result(p, cfg)
    i0 = int(np.nonzero(res.harmonics == 0)[0][0])
    weight = (np.abs(res.eigenvectors[2 * i0]) ** 2
              + np.abs(res.eigenvectors[2 * i0 + 1]) ** 2)
    idx = np.argsort(weight, kind="stable")[-2:]
    return np.sort(fold_to_zone(res.quasienergies[idx], p.delta))


def monodromy_quasienergies(p: DriveParams, rtol: float = 1e-12,
                            atol: float = 1e-14) -> np.ndarray:
    """Quasienergies from the eigenphases of the one-period propagator.

    Integrates the dissipation-free Schroedinger propagator over one beat
    period and converts its unitary eigenphases into folded quasienergies;
    an independent cross-check for the harmonic-expansion route.
    """
    period = p.period
    scale = max(p.energy_scale, 1.0)
    step_max = min(period / 200.0, 0.002 * HBAR_UEV_PS / scale)

    def rhs(t, y):
        u = y.reshape(2, 2)
        ph = cmath.exp(-1j * (p.delta * t / HBAR_UEV_PS + p.phi))
        g = 0.5 * (p.omega1 + p.omega2 * ph)
        h = np.array([[p.delta1, g], [g.conjugate(), 0.0]])
        return (-1j / HBAR_UEV_PS * (h @ u)).ravel()

    y0 = np.eye(2, dtype=complex).ravel()
    u = integrate(rhs, 0.0, period, y0, rtol=rtol, atol=atol,
                  step_max=step_max)[-1].reshape(2, 2)
    lam = np.linalg.eigvals(u)
    eps = -HBAR_UEV_PS * np.angle(lam) / period
    return np.sort(fold_to_zone(eps, p.delta))
