"""Time-dependent Hamiltonian, Lindblad generator and propagation.

The master equation for the driven emitter is linear in the instantaneous
drive amplitude g(t) = (omega1 + omega2*exp(-i*(Delta*t/hbar + phi)))/2, so
the 4x4 generator is assembled once as L(t) = L0 + g(t)*Lp + conj(g(t))*Lm
and only the scalar g(t) is recomputed inside the integration loop.  Many
trajectories with different absolute time offsets can therefore be
propagated in one batched solve.
"""

from dataclasses import dataclass
import math

import numpy as np

from .core import (
    HBAR_UEV_PS,
    IDENTITY2,
    PROJ_X,
    SIGMA_MINUS,
    SIGMA_PLUS,
    DegenerateDriveError,
    DissipationParams,
    DriveParams,
    density_eigenvalues,
    ground_state,
    unvectorize,
    vectorize,
)
from .integrator import integrate

__all__ = [
    "PropagatorConfig",
    "SteadyCycle",
    "StateInvalidError",
    "SteadyStateError",
    "NonUniqueSteadyStateError",
    "drive_amplitude",
    "hamiltonian_at",
    "liouvillian_at",
    "liouvillian_parts",
    "propagate",
    "periodic_steady_state",
    "stationary_state",
]


class StateInvalidError(RuntimeError):
    """Propagated state left the physical set beyond tolerance."""


class SteadyStateError(RuntimeError):
    """Periodic steady state did not converge."""


class NonUniqueSteadyStateError(RuntimeError):
    """The time-independent Liouvillian has a degenerate null space."""


@dataclass(frozen=True)
class PropagatorConfig:
    """Numerical knobs for Lindblad propagation.

    ``step_max`` is an optional user cap in ps; the effective cap never
    exceeds T/200 (for a beating drive) nor 0.01*hbar/E where E is the
    largest energy scale, so a single step never advances the drive phase
    or any coherence by more than ~0.01 rad.
    """

    step_max: float | None = None
    rel_tol: float = 1e-8
    abs_tol: float = 1e-11
    t_transient_factor: float = 20.0
    ss_tol: float = 1e-10
    max_periods: int = 10_000
    period_samples: int = 32

    def effective_step_max(self, p: DriveParams, d: DissipationParams) -> float:
        scale = max(p.energy_scale, d.gamma)
        caps = []
        if scale > 0.0:
            caps.append(0.01 * HBAR_UEV_PS / scale)
        if p.delta != 0.0:
            caps.append(p.period / 200.0)
        if self.step_max is not None:
            caps.append(self.step_max)
        return min(caps) if caps else 1.0


def drive_amplitude(t, p: DriveParams):
    """Complex coupling g(t) = (omega1 + omega2 e^{-i(Delta t/hbar + phi)})/2 in ueV."""
    phase = np.exp(-1j * (p.delta * np.asarray(t) / HBAR_UEV_PS + p.phi))
    return 0.5 * (p.omega1 + p.omega2 * phase)


def hamiltonian_at(t: float, p: DriveParams) -> np.ndarray:
    """Rotating-frame Hamiltonian (ueV) at absolute time t (ps)."""
    g = drive_amplitude(t, p)
    return np.array([[p.delta1, g], [np.conj(g), 0.0]], dtype=complex)


def _kron(a, b):
    return np.kron(a, b)


def _dissipator(op: np.ndarray) -> np.ndarray:
    """Superoperator of 2 A rho A+ - A+A rho - rho A+A (column-major vec)."""
    ada = op.conj().T @ op
    return 2.0 * _kron(op.conj(), op) - _kron(IDENTITY2, ada) - _kron(ada.T, IDENTITY2)


def liouvillian_parts(p: DriveParams, d: DissipationParams):
    """Constant pieces (L0, Lp, Lm) with L(t) = L0 + g(t) Lp + g*(t) Lm, in 1/ps."""
    l0 = -1j / HBAR_UEV_PS * p.delta1 * (_kron(IDENTITY2, PROJ_X) - _kron(PROJ_X.T, IDENTITY2))
    l0 = l0 + d.gamma / (2.0 * HBAR_UEV_PS) * _dissipator(SIGMA_MINUS)
    l0 = l0 + d.gamma_prime / (2.0 * HBAR_UEV_PS) * _dissipator(PROJ_X)
    lp = -1j / HBAR_UEV_PS * (_kron(IDENTITY2, SIGMA_PLUS) - _kron(SIGMA_PLUS.T, IDENTITY2))
    lm = -1j / HBAR_UEV_PS * (_kron(IDENTITY2, SIGMA_MINUS) - _kron(SIGMA_MINUS.T, IDENTITY2))
    return l0, lp, lm


def liouvillian_at(t: float, p: DriveParams, d: DissipationParams) -> np.ndarray:
    """Full 4x4 generator (1/ps) acting on column-major vectorized states."""
    l0, lp, lm = liouvillian_parts(p, d)
    g = complex(drive_amplitude(t, p))
    return l0 + g * lp + np.conj(g) * lm


def make_batched_rhs(p: DriveParams, d: DissipationParams, t_offsets):
    """RHS for B vectorized operators evolving from absolute times t_offsets.

    The returned callable maps (tau, y) with y of length 4*B; row b of the
    reshaped state is propagated under L(t_offsets[b] + tau).
    """
    l0, lp, lm = liouvillian_parts(p, d)
    l0t, lpt, lmt = l0.T.copy(), lp.T.copy(), lm.T.copy()
    toff = np.asarray(t_offsets, dtype=float)
    b = toff.size
    scale = -1j * p.delta / HBAR_UEV_PS
    amp2 = 0.5 * p.omega2 * np.exp(-1j * p.phi)

    def rhs(tau, y):
        yv = y.reshape(b, 4)
        g = 0.5 * p.omega1 + amp2 * np.exp(scale * (toff + tau))
        out = yv @ l0t
        out += g[:, None] * (yv @ lpt)
        out += np.conj(g)[:, None] * (yv @ lmt)
        return out.ravel()

    return rhs


def _density_hook(eig_floor=-1e-6, corr_cap=1e-8):
    """Projection back onto Hermitian unit-trace states, with bookkeeping."""
    stats = {"max_correction": 0.0}

    def hook(t, y):
        rho = unvectorize(y)
        herm = 0.5 * (rho + rho.conj().T)
        defect = float(np.abs(rho - herm).max())
        tr = herm[0, 0].real + herm[1, 1].real
        corr = max(defect, abs(tr - 1.0))
        if corr > stats["max_correction"]:
            stats["max_correction"] = corr
        if corr > corr_cap:
            raise StateInvalidError(
                f"state invalid: projection correction {corr:.3e} exceeds {corr_cap:.0e} at t={t:.6g}"
            )
        emin = density_eigenvalues(herm)[0]
        if emin < eig_floor:
            raise StateInvalidError(
                f"state invalid: eigenvalue {emin:.3e} below {eig_floor:.0e} at t={t:.6g}"
            )
        return vectorize(herm / tr)

    return hook, stats


def propagate(rho0: np.ndarray, t0: float, t1: float, p: DriveParams,
              d: DissipationParams, cfg: PropagatorConfig = PropagatorConfig(),
              t_eval=None):
    """Propagate a density matrix from absolute time t0 to t1.

    Returns rho(t1), or a list of states at ``t_eval`` when given.  The
    state is re-Hermitized and trace-renormalized after every accepted
    step; the correction needed must stay below 1e-8.
    """
    if t1 < t0:
        raise ValueError("t1 must be >= t0")
    rhs = make_batched_rhs(p, d, [t0])
    hook, _stats = _density_hook()
    smax = cfg.effective_step_max(p, d)
    taus = None if t_eval is None else np.asarray(t_eval, dtype=float) - t0
    ys = integrate(rhs, 0.0, t1 - t0, vectorize(rho0), rtol=cfg.rel_tol,
                   atol=cfg.abs_tol, step_max=smax, t_eval=taus, accept_hook=hook)
    if t_eval is None:
        return unvectorize(ys[-1])
    return [unvectorize(v) for v in ys]


@dataclass(frozen=True)
class SteadyCycle:
    """Samples of the periodic steady state over one beat period."""

    t0: float              # absolute time of the first sample (ps)
    period: float          # beat period T (ps)
    times: np.ndarray      # K absolute sample times
    states: list           # K density matrices


def periodic_steady_state(p: DriveParams, d: DissipationParams,
                          cfg: PropagatorConfig = PropagatorConfig()) -> SteadyCycle:
    """Burn in from |g><g|, iterate whole periods to convergence, sample K points.

    Requires a beating drive (Delta != 0); use :func:`stationary_state` for
    the degenerate single-frequency case.
    """
    if p.delta == 0.0:
        raise DegenerateDriveError(
            "degenerate-frequency drive: use stationary_state for Delta = 0"
        )
    if d.gamma <= 0.0:
        raise ValueError("gamma > 0 is required to reach a steady state")
    period = p.period
    smax = cfg.effective_step_max(p, d)
    rhs = make_batched_rhs(p, d, [0.0])
    hook, _stats = _density_hook()
    t_burn = cfg.t_transient_factor * HBAR_UEV_PS / d.gamma
    # land the burn-in on a whole number of periods so the drive phase at the
    # cycle start matches t = 0
    n_burn = max(1, math.ceil(t_burn / period))
    t = n_burn * period
    y = integrate(rhs, 0.0, t, vectorize(ground_state()), rtol=cfg.rel_tol,
                  atol=cfg.abs_tol, step_max=smax, accept_hook=hook)[-1]
    converged = False
    for _ in range(cfg.max_periods):
        y_next = integrate(rhs, t, t + period, y, rtol=cfg.rel_tol,
                           atol=cfg.abs_tol, step_max=smax, accept_hook=hook)[-1]
        delta = float(np.abs(y_next - y).max())
        y = y_next
        t += period
        if delta < cfg.ss_tol:
            converged = True
            break
    if not converged:
        raise SteadyStateError(
            f"no convergence: periodic steady state not reached after {cfg.max_periods} periods"
        )
    k = cfg.period_samples
    taus = np.arange(k) * (period / k)
    ys = integrate(rhs, t, t + period, y, rtol=cfg.rel_tol, atol=cfg.abs_tol,
                   step_max=smax, t_eval=t + taus, accept_hook=hook)
    states = [unvectorize(v) for v in ys]
    return SteadyCycle(t0=t, period=period, times=t + taus, states=states)


def stationary_state(p: DriveParams, d: DissipationParams) -> np.ndarray:
    """Steady state of the time-independent generator (Delta = 0 path).

    Both drives share one frequency, acting as a single drive of complex
    amplitude omega1 + omega2*exp(-i*phi).
    """
    if p.delta != 0.0:
        raise ValueError("stationary_state requires Delta = 0")
    liou = liouvillian_at(0.0, p, d)
    _, s, vh = np.linalg.svd(liou)
    tol = max(s[0], 1.0) * 1e-12
    null_dim = int(np.sum(s < tol))
    if null_dim > 1:
        raise NonUniqueSteadyStateError(
            f"non-unique steady state: null-space dimension {null_dim}"
        )
    rho = unvectorize(vh[-1].conj())
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise NonUniqueSteadyStateError("non-unique steady state: traceless null vector")
    return rho / tr
