import numpy as np
import pytest

import twotone as tt
from twotone.core import (
    HBAR_UEV_PS,
    excited_state,
    ground_state,
    hermiticity_defect,
    density_eigenvalues,
    is_valid_density,
)
from twotone.dynamics import (
    NonUniqueSteadyStateError,
    PropagatorConfig,
    liouvillian_parts,
    make_batched_rhs,
    periodic_steady_state,
    propagate,
    stationary_state,
)
from twotone.integrator import rk4_fixed

from oracles import propagate_scipy

FIG1_P = tt.DriveParams(omega1=30.0, omega2=30.0, delta1=0.0, delta2=30.0)
FIG1_D = tt.DissipationParams(gamma=1.0, gamma_prime=1.0)


class TestHamiltonian:
    def test_single_resonant_drive(self):
        p = tt.DriveParams(omega1=30.0, omega2=0.0)
        h = tt.hamiltonian_at(17.3, p)
        assert np.allclose(h, [[0.0, 15.0], [15.0, 0.0]], atol=0.0)

    def test_amplitudes_add_at_t0(self):
        h = tt.hamiltonian_at(0.0, FIG1_P)
        assert h[0, 1] == pytest.approx(30.0, abs=0.0)

    def test_amplitudes_cancel_at_half_period(self):
        h = tt.hamiltonian_at(FIG1_P.period / 2.0, FIG1_P)
        assert abs(h[0, 1]) < 1e-12

    def test_hermitian(self):
        p = tt.DriveParams(omega1=12.0, omega2=7.0, delta1=3.0, delta2=-9.0, phi=0.7)
        for t in (0.0, 13.7, 200.1):
            h = tt.hamiltonian_at(t, p)
            assert hermiticity_defect(h) == 0.0


class TestLiouvillian:
    def test_population_decay_rate(self):
        p = tt.DriveParams(omega1=0.0, omega2=0.0)
        d = tt.DissipationParams(gamma=2.0, gamma_prime=0.0)
        liou = tt.liouvillian_at(0.0, p, d)
        drho = liou @ np.array([1.0, 0, 0, 0], dtype=complex)
        assert drho[0] == pytest.approx(-2.0 / HBAR_UEV_PS, rel=1e-14)
        assert drho[3] == pytest.approx(+2.0 / HBAR_UEV_PS, rel=1e-14)

    def test_pure_dephasing(self):
        p = tt.DriveParams(omega1=0.0, omega2=0.0)
        d = tt.DissipationParams(gamma=0.0, gamma_prime=3.0)
        liou = tt.liouvillian_at(0.0, p, d)
        # populations untouched
        assert abs(liou @ np.array([1, 0, 0, 0], dtype=complex)).max() == 0.0
        # coherence decays at gamma'/(2 hbar) under (gamma'/2) L[s+s-]
        drho = liou @ np.array([0, 1.0, 0, 0], dtype=complex)
        assert drho[1] == pytest.approx(-1.5 / HBAR_UEV_PS, rel=1e-14)

    def test_trace_rows_vanish(self):
        liou = tt.liouvillian_at(42.0, FIG1_P, FIG1_D)
        assert np.abs(liou[0] + liou[3]).max() < 1e-14

    def test_parts_reassemble(self):
        l0, lp, lm = liouvillian_parts(FIG1_P, FIG1_D)
        from twotone.dynamics import drive_amplitude

        g = complex(drive_amplitude(11.0, FIG1_P))
        assert np.allclose(l0 + g * lp + np.conj(g) * lm,
                           tt.liouvillian_at(11.0, FIG1_P, FIG1_D), atol=1e-18)


class TestPropagate:
    def test_free_decay(self):
        p = tt.DriveParams(omega1=0.0, omega2=0.0)
        d = tt.DissipationParams(gamma=1.0)
        rho = propagate(excited_state(), 0.0, HBAR_UEV_PS, p, d)
        assert rho[0, 0].real == pytest.approx(np.exp(-1.0), rel=1e-7)

    def test_rabi_frequency(self):
        # strong resonant drive: population oscillates at Omega1/hbar
        p = tt.DriveParams(omega1=40.0, omega2=0.0)
        d = tt.DissipationParams(gamma=0.01)
        t_pi = np.pi * HBAR_UEV_PS / 40.0
        rho = propagate(ground_state(), 0.0, t_pi, p, d)
        assert rho[0, 0].real == pytest.approx(1.0, abs=1e-3)

    def test_against_fixed_step_reference(self):
        cfg = PropagatorConfig()
        smax = cfg.effective_step_max(FIG1_P, FIG1_D)
        period = FIG1_P.period
        rho = propagate(ground_state(), 0.0, period, FIG1_P, FIG1_D, cfg)
        rhs = make_batched_rhs(FIG1_P, FIG1_D, [0.0])
        nsteps = int(np.ceil(period / (smax / 100.0)))
        ref = rk4_fixed(rhs, 0.0, period, np.array([0, 0, 0, 1.0 + 0j]), nsteps)
        assert np.abs(rho.flatten(order="F") - ref).max() < 1e-8

    def test_against_scipy(self):
        rho = propagate(ground_state(), 0.0, 500.0, FIG1_P, FIG1_D)
        ref = propagate_scipy(ground_state(), 0.0, 500.0, FIG1_P, FIG1_D)[-1]
        assert np.abs(rho - ref).max() < 1e-8

    def test_unitary_purity(self):
        p = tt.DriveParams(omega1=25.0, omega2=10.0, delta1=5.0, delta2=25.0)
        d = tt.DissipationParams(gamma=0.0, gamma_prime=0.0)
        rho0 = excited_state()
        rho = propagate(rho0, 0.0, 10.0 * p.period, p, d)
        purity = np.trace(rho @ rho).real
        assert purity == pytest.approx(1.0, abs=1e-9)

    def test_step_halving_stability(self):
        cfg = PropagatorConfig()
        smax = cfg.effective_step_max(FIG1_P, FIG1_D)
        r1 = propagate(ground_state(), 0.0, 300.0, FIG1_P, FIG1_D, cfg)
        r2 = propagate(ground_state(), 0.0, 300.0, FIG1_P, FIG1_D,
                       PropagatorConfig(step_max=smax / 2.0))
        assert np.abs(r1 - r2).max() < 10.0 * PropagatorConfig.rel_tol


class TestPeriodicSteadyState:
    def test_no_drive_ground_state(self):
        p = tt.DriveParams(omega1=0.0, omega2=0.0, delta1=0.0, delta2=30.0)
        cyc = periodic_steady_state(p, tt.DissipationParams(gamma=1.0))
        for rho in cyc.states:
            assert np.abs(rho - ground_state()).max() < 1e-12

    def test_strong_resonant_saturation(self):
        p = tt.DriveParams(omega1=30.0, omega2=0.0, delta1=0.0, delta2=30.0)
        d = tt.DissipationParams(gamma=1.0, gamma_prime=0.0)
        cyc = periodic_steady_state(p, d)
        expected = 30.0 ** 2 / (2.0 * 30.0 ** 2 + 1.0 ** 2)
        pops = [rho[0, 0].real for rho in cyc.states]
        assert np.ptp(pops) < 5e-9          # time-independent cycle
        assert pops[0] == pytest.approx(expected, abs=1e-7)

    def test_fig1_periodicity(self):
        cyc = periodic_steady_state(FIG1_P, FIG1_D)
        shifted = propagate(cyc.states[0], cyc.t0, cyc.times[-1] + cyc.period,
                            FIG1_P, FIG1_D, t_eval=cyc.times + cyc.period)
        for rho_a, rho_b in zip(cyc.states, shifted):
            assert np.abs(rho_a - rho_b).max() < 1e-9

    def test_validity_of_samples(self):
        cyc = periodic_steady_state(FIG1_P, FIG1_D)
        for rho in cyc.states:
            assert is_valid_density(rho)


class TestStationaryState:
    def test_undriven(self):
        p = tt.DriveParams(omega1=0.0, omega2=0.0)
        rho = stationary_state(p, tt.DissipationParams(gamma=1.0))
        assert np.abs(rho - ground_state()).max() < 1e-12

    def test_destructive_interference(self):
        p = tt.DriveParams(omega1=15.0, omega2=15.0, phi=np.pi)
        rho = stationary_state(p, tt.DissipationParams(gamma=1.0))
        assert np.abs(rho - ground_state()).max() < 1e-12

    def test_matches_equivalent_single_drive(self):
        d = tt.DissipationParams(gamma=1.0)
        combined = stationary_state(tt.DriveParams(omega1=15.0, omega2=15.0), d)
        single = stationary_state(tt.DriveParams(omega1=30.0, omega2=0.0), d)
        assert np.abs(combined - single).max() < 1e-12
        # propagate-to-convergence oracle
        long = propagate_scipy(ground_state(), 0.0, 80.0 * HBAR_UEV_PS,
                               tt.DriveParams(omega1=15.0, omega2=15.0), d)[-1]
        assert np.abs(combined - long).max() < 1e-8

    def test_requires_degenerate_drive(self):
        with pytest.raises(ValueError, match="Delta = 0"):
            stationary_state(FIG1_P, FIG1_D)

    def test_unitary_case_rejected(self):
        p = tt.DriveParams(omega1=0.0, omega2=0.0)
        with pytest.raises(NonUniqueSteadyStateError, match="non-unique"):
            stationary_state(p, tt.DissipationParams(gamma=0.0))


def test_physicality_along_trajectory():
    rng = np.random.default_rng(2024)
    p = tt.DriveParams(omega1=22.0, omega2=17.0, delta1=-8.0, delta2=14.0)
    d = tt.DissipationParams(gamma=1.3, gamma_prime=0.7)
    t_eval = np.sort(rng.uniform(0.0, 400.0, size=25))
    states = propagate(ground_state(), 0.0, 400.0, p, d, t_eval=t_eval)
    for rho in states:
        assert abs(np.trace(rho) - 1.0) < 1e-10
        assert hermiticity_defect(rho) < 1e-12
        assert density_eigenvalues(rho)[0] >= -1e-9
