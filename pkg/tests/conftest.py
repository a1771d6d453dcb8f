"""Shared fixtures: the expensive spectra are computed once per session."""

import numpy as np
import pytest

import twotone as tt

# canonical parameter sets used across the suite
FIG1_DISSIPATION = tt.DissipationParams(gamma=1.0, gamma_prime=1.0)
FIG2_DISSIPATION = tt.DissipationParams(gamma=1.66, gamma_prime=2.0)


def fig1_drive(omega2):
    return tt.DriveParams(omega1=30.0, omega2=omega2, delta1=0.0, delta2=30.0)


def fig4_drive(omega2):
    omega1, delta1 = 31.6, 10.0
    beat = -float(np.hypot(omega1, delta1))
    return tt.DriveParams(omega1=omega1, omega2=omega2, delta1=delta1,
                          delta2=delta1 - beat)


@pytest.fixture(scope="session")
def wide_grid():
    return np.linspace(-100.0, 100.0, 1601)


@pytest.fixture(scope="session")
def mollow_trace():
    """Single resonant drive, no dephasing: the textbook triplet."""
    p = tt.DriveParams(omega1=30.0, omega2=0.0, delta1=0.0, delta2=30.0)
    d = tt.DissipationParams(gamma=1.0, gamma_prime=0.0)
    grid = np.linspace(-50.0, 50.0, 801)
    return tt.incoherent_spectrum(grid, p, d)


@pytest.fixture(scope="session")
def fig1_trace_ac02(wide_grid):
    """Weak secondary drive on the red sideband (alpha_c = 0.2)."""
    return tt.incoherent_spectrum(wide_grid, fig1_drive(6.0), FIG1_DISSIPATION)


@pytest.fixture(scope="session")
def fig1_trace_ac1(wide_grid):
    """Equal drive strengths (alpha_c = 1)."""
    return tt.incoherent_spectrum(wide_grid, fig1_drive(30.0), FIG1_DISSIPATION)


@pytest.fixture(scope="session")
def harmonic_traces(wide_grid):
    """Spectra at alpha_c = 0, 0.2, 0.3, 0.4 for the second-triplet scaling.

    The alpha_c = 0 trace carries no triplet and measures the background
    under the triplet window (tails of the central Mollow structure).
    """
    out = {}
    for alpha_c in (0.0, 0.2, 0.3, 0.4):
        out[alpha_c] = tt.incoherent_spectrum(wide_grid, fig1_drive(30.0 * alpha_c),
                                              FIG1_DISSIPATION)
    return out


@pytest.fixture(scope="session")
def fig2a_sweep():
    """Secondary-power sweep at the red sideband, 12 points up to 2*omega1."""
    cfg = tt.parse_config(
        "\n".join([
            "drive.omega1_ueV = 30.0",
            "drive.delta1_ueV = 0.0",
            "drive.delta2_ueV = 30.0",
            "dissipation.gamma_ueV = 1.66",
            "dissipation.gamma_prime_ueV = 2.0",
            "numerics.omega_min_ueV = -100.0",
            "numerics.omega_max_ueV = 100.0",
            "numerics.omega_points = 801",
            "numerics.period_samples = 16",
            "sweep.parameter = omega2",
            "sweep.min = 0.0",
            "sweep.max = 60.0",
            "sweep.points = 12",
        ])
    )
    return tt.run_sweep(cfg)


@pytest.fixture(scope="session")
def fig3a_sweep():
    """Beat-frequency sweep at fixed drive strengths (subharmonic structure)."""
    cfg = tt.parse_config(
        "\n".join([
            "drive.omega1_ueV = 35.0",
            "drive.omega2_ueV = 15.0",
            "drive.delta1_ueV = 0.0",
            "dissipation.gamma_ueV = 1.66",
            "dissipation.gamma_prime_ueV = 2.0",
            "numerics.omega_min_ueV = -90.0",
            "numerics.omega_max_ueV = 90.0",
            "numerics.omega_points = 721",
            "numerics.period_samples = 16",
            "sweep.parameter = delta",
            "sweep.min = 9.4",
            "sweep.max = 40.0",
            "sweep.points = 27",
        ])
    )
    return tt.run_sweep(cfg)


@pytest.fixture(scope="session")
def fig4_traces():
    """Detuned-primary geometry at three secondary strengths."""
    grid = np.linspace(-80.0, 80.0, 1281)
    out = {}
    for alpha_c in (0.2, 0.3, 0.4):
        out[alpha_c] = tt.incoherent_spectrum(grid, fig4_drive(31.6 * alpha_c),
                                              FIG2_DISSIPATION)
    return out
