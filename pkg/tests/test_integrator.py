import numpy as np
import pytest
from scipy.integrate import solve_ivp

from twotone.integrator import StepSizeUnderflowError, integrate, rk4_fixed


def test_exponential_decay():
    ys = integrate(lambda t, y: -0.3 * y, 0.0, 10.0, np.array([2.0 + 0j]),
                   rtol=1e-10, atol=1e-13, step_max=0.5)
    assert ys[-1][0] == pytest.approx(2.0 * np.exp(-3.0), rel=1e-9)


def test_complex_rotation_phase():
    ys = integrate(lambda t, y: 1j * y, 0.0, 20.0, np.array([1.0 + 0j]),
                   rtol=1e-11, atol=1e-14, step_max=0.2)
    assert abs(ys[-1][0] - np.exp(20j)) < 1e-9


def test_t_eval_exact_nodes():
    t_eval = np.array([0.0, 0.7, 0.7, 1.3, 5.0])
    ys = integrate(lambda t, y: -y, 0.0, 5.0, np.array([1.0 + 0j]),
                   rtol=1e-10, atol=1e-13, step_max=0.3, t_eval=t_eval)
    expected = np.exp(-t_eval)
    assert np.allclose(ys[:, 0], expected, rtol=1e-8)
    assert ys[1, 0] == ys[2, 0]  # duplicated node shares one state


def test_matches_scipy_on_linear_system():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    a = a - a.conj().T  # skew-Hermitian: bounded dynamics
    y0 = rng.normal(size=6) + 1j * rng.normal(size=6)
    mine = integrate(lambda t, y: a @ y, 0.0, 4.0, y0,
                     rtol=1e-11, atol=1e-13, step_max=0.05)[-1]
    ref = solve_ivp(lambda t, y: a @ y, (0, 4.0), y0, rtol=1e-12, atol=1e-14).y[:, -1]
    assert np.abs(mine - ref).max() < 1e-8


def test_convergence_order():
    # with tolerances slack, the step cap dominates: error ~ h^5
    def run(h):
        return integrate(lambda t, y: 1j * 2.5 * y, 0.0, 8.0, np.array([1.0 + 0j]),
                         rtol=1e-3, atol=1e-6, step_max=h)[-1][0]

    exact = np.exp(1j * 20.0)
    e1 = abs(run(0.2) - exact)
    e2 = abs(run(0.1) - exact)
    assert e1 / e2 > 2 ** 4  # at least fourth order in the cap


def test_step_underflow_raises():
    def stiff(t, y):
        return -1e9 * y

    with pytest.raises(StepSizeUnderflowError, match="step-size underflow"):
        integrate(stiff, 0.0, 1.0, np.array([1.0 + 0j]),
                  rtol=1e-13, atol=1e-16, step_max=0.5, step_min=1e-4)


def test_accept_hook_applied():
    seen = []

    def hook(t, y):
        seen.append(t)
        return y / np.abs(y)  # renormalize magnitude

    ys = integrate(lambda t, y: 1j * y, 0.0, 3.0, np.array([1.0 + 0j]),
                   rtol=1e-9, atol=1e-12, step_max=0.1, accept_hook=hook)
    assert len(seen) >= 30
    assert abs(abs(ys[-1][0]) - 1.0) < 1e-12


def test_rk4_fixed_reference():
    y = rk4_fixed(lambda t, y: -y, 0.0, 1.0, np.array([1.0 + 0j]), 2000)
    assert y[0] == pytest.approx(np.exp(-1.0), rel=1e-10)
