"""Two-time correlations and the incoherent emission spectrum.

The fluctuation correlator C(t, tau) = <s+(t) s-(t+tau)> - <s+(t)><s-(t+tau)>
is obtained by propagating the operator-valued initial condition rho(t)*s+
(and rho(t) itself, for the time-dependent means) under the same Lindblad
generator, then tracing against s-.  For a beating drive the correlator is
averaged over one period of the steady cycle; the spectrum is the real part
of the one-sided Fourier transform

    S_i(w) = Re int_0^taumax dtau exp(+i (w - w1) tau / hbar) Cbar(tau),

which puts the emission of a red-detuned emitter (delta1 > 0) on the
positive side of the laser, as it must be.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .core import (
    HBAR_UEV_PS,
    SIGMA_PLUS,
    DissipationParams,
    DriveParams,
    vectorize,
)
from .dynamics import (
    PropagatorConfig,
    SteadyCycle,
    make_batched_rhs,
    periodic_steady_state,
    stationary_state,
)
from .integrator import integrate

__all__ = [
    "CorrelationTrace",
    "SpectrumTrace",
    "TailNotConvergedError",
    "two_time_correlation",
    "time_averaged_correlation",
    "incoherent_spectrum",
    "spectrum_from_correlation",
    "default_tau_grid",
]

_XG_INDEX = 2  # position of the (x,g) element in a column-major vectorized operator


class TailNotConvergedError(RuntimeError):
    """The correlator has not decayed below tail_tol at tau_max."""


@dataclass(frozen=True)
class CorrelationTrace:
    """Time-averaged fluctuation correlator on a uniform tau grid."""

    tau: np.ndarray
    values: np.ndarray

    @property
    def tail_ratio(self) -> float:
        c0 = abs(self.values[0])
        return abs(self.values[-1]) / c0 if c0 > 0.0 else 0.0


@dataclass(frozen=True)
class SpectrumTrace:
    """Incoherent spectrum sampled on a frequency grid relative to the first laser."""

    omega_rel: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)


def _slowest_decay_rate(p: DriveParams, d: DissipationParams) -> float:
    """Slowest nonzero relaxation rate (1/ps) of the time-averaged generator."""
    from .dynamics import liouvillian_parts

    l0, lp, lm = liouvillian_parts(p, d)
    gbar = 0.5 * p.omega1  # the beating term averages to zero over a period
    lbar = l0 + gbar * (lp + lm)
    ev = np.linalg.eigvals(lbar)
    rates = -ev.real
    rates = rates[rates > 1e-12]
    if rates.size == 0:
        raise ValueError("dissipation-free generator has no decaying modes")
    return float(rates.min())


def default_tau_grid(omega_rel_grid, p: DriveParams, d: DissipationParams,
                     tau_step: float | None = None,
                     tau_max: float | None = None) -> np.ndarray:
    """Uniform tau grid resolving both the requested window and the dynamics.

    The step obeys tau_step <= pi*hbar/(4*max|w_rel|); the default is twice
    as fine and also resolves the fastest coherent scale of the drive.  The
    default span covers twelve e-foldings of the slowest relaxation mode.
    """
    wmax = float(np.max(np.abs(omega_rel_grid)))
    if d.gamma <= 0.0:
        raise ValueError("gamma > 0 is required for a convergent spectrum")
    if tau_step is None:
        e_dyn = 3.0 * (p.energy_scale + d.total_rate)
        tau_step = math.pi * HBAR_UEV_PS / (8.0 * max(wmax, e_dyn, 1.0))
    elif wmax > 0.0 and tau_step > math.pi * HBAR_UEV_PS / (4.0 * wmax):
        raise ValueError(
            f"tau_step={tau_step:.3g} ps undersamples the frequency window "
            f"(need <= {math.pi * HBAR_UEV_PS / (4.0 * wmax):.3g} ps)"
        )
    if tau_max is None:
        tau_max = 12.0 / _slowest_decay_rate(p, d)
    n = int(math.ceil(tau_max / tau_step)) + 1
    return np.arange(n) * tau_step


def _correlations_on_cycle(cycle_times, cycle_states, tau_grid,
                           p: DriveParams, d: DissipationParams,
                           cfg: PropagatorConfig):
    """Per-sample correlators C(t_k, tau) for all cycle samples, batched."""
    k = len(cycle_states)
    y0 = np.empty((2 * k, 4), dtype=complex)
    sp_mean = np.empty(k, dtype=complex)
    for i, rho in enumerate(cycle_states):
        y0[2 * i] = vectorize(rho @ SIGMA_PLUS)
        y0[2 * i + 1] = vectorize(rho)
        sp_mean[i] = np.trace(rho @ SIGMA_PLUS)
    toff = np.repeat(np.asarray(cycle_times, dtype=float), 2)
    rhs = make_batched_rhs(p, d, toff)
    smax = cfg.effective_step_max(p, d)
    ys = integrate(rhs, 0.0, float(tau_grid[-1]), y0.ravel(), rtol=cfg.rel_tol,
                   atol=cfg.abs_tol, step_max=smax, t_eval=tau_grid)
    ys = ys.reshape(len(tau_grid), 2 * k, 4)
    corr = ys[:, 0::2, _XG_INDEX].T          # <s+(t_k) s-(t_k+tau)>
    mean_minus = ys[:, 1::2, _XG_INDEX].T    # <s-(t_k+tau)>
    return corr - sp_mean[:, None] * mean_minus


def two_time_correlation(t: float, tau_grid, p: DriveParams, d: DissipationParams,
                         cfg: PropagatorConfig = PropagatorConfig(),
                         cycle: SteadyCycle | None = None) -> np.ndarray:
    """Fluctuation correlator C(t, tau) for one steady-cycle time t.

    ``t`` is reduced into the converged cycle modulo the beat period (the
    steady state inherits the drive periodicity).
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if p.delta == 0.0:
        rho = stationary_state(p, d)
        return _correlations_on_cycle([t], [rho], tau_grid, p, d, cfg)[0]
    if cycle is None:
        cycle = periodic_steady_state(p, d, cfg)
    shift = (t - cycle.t0) % cycle.period
    from .dynamics import propagate

    rho_t = propagate(cycle.states[0], cycle.t0, cycle.t0 + shift, p, d, cfg)
    return _correlations_on_cycle([cycle.t0 + shift], [rho_t], tau_grid, p, d, cfg)[0]


def time_averaged_correlation(tau_grid, p: DriveParams, d: DissipationParams,
                              cfg: PropagatorConfig = PropagatorConfig(),
                              cycle: SteadyCycle | None = None) -> CorrelationTrace:
    """Average of C(t, tau) over one beat period of the steady cycle.

    For a degenerate drive (Delta = 0) the steady state is stationary and
    the average reduces to the single stationary correlator.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if p.delta == 0.0:
        rho = stationary_state(p, d)
        values = _correlations_on_cycle([0.0], [rho], tau_grid, p, d, cfg)[0]
        return CorrelationTrace(tau=tau_grid, values=values)
    if cycle is None:
        cycle = periodic_steady_state(p, d, cfg)
    per_t = _correlations_on_cycle(cycle.times, cycle.states, tau_grid, p, d, cfg)
    values = per_t.mean(axis=0)
    return CorrelationTrace(tau=tau_grid, values=values)


def spectrum_from_correlation(corr: CorrelationTrace, omega_rel_grid,
                              window_fwhm: float | None = None,
                              metadata: dict | None = None) -> SpectrumTrace:
    """Trapezoid Fourier transform of the correlator onto a frequency grid.

    An optional Lorentzian window of the given FWHM (ueV) multiplies the
    correlator by exp(-fwhm*tau/(2*hbar)); useful for dissipation-starved
    parameter sets where the bare tail decays too slowly.
    """
    omega_rel_grid = np.asarray(omega_rel_grid, dtype=float)
    tau = corr.tau
    dtau = tau[1] - tau[0]
    weights = np.full(tau.size, dtau)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    c = corr.values * weights
    if window_fwhm is not None:
        c = c * np.exp(-0.5 * window_fwhm * tau / HBAR_UEV_PS)
    values = np.empty(omega_rel_grid.size)
    block = 512
    for i in range(0, omega_rel_grid.size, block):
        w = omega_rel_grid[i:i + block]
        kernel = np.exp(1j * np.outer(w, tau) / HBAR_UEV_PS)
        values[i:i + block] = (kernel @ c).real
    md = dict(metadata or {})
    md["window_fwhm_uev"] = window_fwhm
    return SpectrumTrace(omega_rel=omega_rel_grid, values=values, metadata=md)


def incoherent_spectrum(omega_rel_grid, p: DriveParams, d: DissipationParams,
                        cfg: PropagatorConfig = PropagatorConfig(), *,
                        tau_step: float | None = None,
                        tau_max: float | None = None,
                        tail_tol: float = 1e-4,
                        window_fwhm: float | None = None,
                        cycle: SteadyCycle | None = None) -> SpectrumTrace:
    """End-to-end incoherent spectrum on a frequency grid (ueV, relative to laser 1).

    Raises :class:`TailNotConvergedError` when the averaged correlator has
    not decayed below ``tail_tol`` of its tau = 0 value at the end of the
    tau grid (the coherent component is removed by construction, so a
    finite tail signals an under-resolved integral, not elastic scatter).
    """
    omega_rel_grid = np.asarray(omega_rel_grid, dtype=float)
    tau = default_tau_grid(omega_rel_grid, p, d, tau_step=tau_step, tau_max=tau_max)
    corr = time_averaged_correlation(tau, p, d, cfg, cycle=cycle)
    c0 = abs(corr.values[0])
    if c0 > 1e-25:
        eff_tail = corr.tail_ratio
        if window_fwhm is not None:
            eff_tail *= math.exp(-0.5 * window_fwhm * tau[-1] / HBAR_UEV_PS)
        if eff_tail > tail_tol:
            raise TailNotConvergedError(
                f"tail not converged: |C(tau_max)|/|C(0)| = {eff_tail:.3e} > {tail_tol:.1e}"
            )
    md = {
        "drive": p,
        "dissipation": d,
        "tau_step_ps": float(tau[1] - tau[0]) if tau.size > 1 else 0.0,
        "tau_max_ps": float(tau[-1]),
        "period_samples": cfg.period_samples if p.delta != 0.0 else 1,
        "rel_tol": cfg.rel_tol,
        "abs_tol": cfg.abs_tol,
    }
    return spectrum_from_correlation(corr, omega_rel_grid, window_fwhm=window_fwhm,
                                     metadata=md)
