"""Adaptive embedded Runge-Kutta integration for complex linear ODE systems.

A Dormand-Prince 5(4) pair with elementary step-size control.  Steps are
clipped so that requested output times are hit exactly (no dense-output
interpolation), which keeps sampled trajectories free of interpolation
error and makes runs bit-reproducible.
"""

import numpy as np

# Dormand-Prince 5(4) tableau.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_ORDER_EXP = 0.2  # 1/(4+1)


class StepSizeUnderflowError(RuntimeError):
    """Raised when the error controller demands steps below the floor."""


def _error_norm(err, y_old, y_new, rtol, atol):
    scale = atol + rtol * np.maximum(np.abs(y_old), np.abs(y_new))
    q = np.abs(err) / scale
    return float(np.sqrt(np.mean(q * q)))


def integrate(f, t0, t1, y0, *, rtol=1e-8, atol=1e-11, step_max,
              step_min=1e-8, t_eval=None, accept_hook=None):
    """Integrate dy/dt = f(t, y) from t0 to t1 (t1 >= t0).

    Parameters
    ----------
    f : callable(t, y) -> ndarray
        Right-hand side; y is a flat complex array.
    step_max : float
        Hard cap on the step size (ps).
    t_eval : ndarray or None
        Sorted sample times inside [t0, t1]; the stepper lands on each
        exactly.  When None, only the final state is recorded.
    accept_hook : callable(t, y) -> y or None
        Applied to the state after every accepted step (e.g. a projection
        back onto physical states).

    Returns
    -------
    ys : ndarray
        Array of shape (len(t_eval), n), or (1, n) holding y(t1) when
        t_eval is None.
    """
    if t1 < t0:
        raise ValueError("backward integration is not supported")
    y = np.asarray(y0, dtype=complex).ravel().copy()
    n = y.size
    if t_eval is None:
        eval_pts = np.array([t1], dtype=float)
    else:
        eval_pts = np.asarray(t_eval, dtype=float)
        if eval_pts.size and (eval_pts[0] < t0 - 1e-12 or eval_pts[-1] > t1 + 1e-12):
            raise ValueError("t_eval must lie within [t0, t1]")
    out = np.empty((eval_pts.size, n), dtype=complex)
    ie = 0
    t = t0
    while ie < eval_pts.size and eval_pts[ie] <= t0:
        out[ie] = y
        ie += 1
    if ie >= eval_pts.size:
        return out

    k = np.empty((7, n), dtype=complex)
    k[0] = f(t, y)
    h_ctrl = min(step_max, max(step_min, (t1 - t0) * 1e-3))
    while ie < eval_pts.size:
        target = eval_pts[ie]
        h = min(h_ctrl, step_max)
        clipped = False
        if t + h >= target - 1e-12 * max(abs(target), 1.0):
            h = target - t
            clipped = True
        if h < step_min and not clipped:
            raise StepSizeUnderflowError(
                f"step-size underflow: controller demanded h={h:.3e} ps at t={t:.6g}"
            )
        for i in range(1, 7):
            yi = y + h * (_A[i] @ k[:i])
            k[i] = f(t + _C[i] * h, yi)
        y_new = y + h * (_B5 @ k)
        err = h * (_E @ k)
        enorm = _error_norm(err, y, y_new, rtol, atol)
        if enorm <= 1.0:
            t = t + h
            y = y_new
            if accept_hook is not None:
                y = accept_hook(t, y)
                k[6] = f(t, y)
            k[0] = k[6]  # FSAL
            if clipped:
                out[ie] = y
                ie += 1
                while ie < eval_pts.size and eval_pts[ie] <= t:
                    out[ie] = y
                    ie += 1
                # keep the controller's preferred size across landing steps
            else:
                factor = _MAX_FACTOR if enorm == 0.0 else min(
                    _MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * enorm ** -_ORDER_EXP))
                h_ctrl = min(step_max, h * factor)
        else:
            shrink = max(_MIN_FACTOR, _SAFETY * enorm ** -_ORDER_EXP)
            h_ctrl = h * shrink
            if h_ctrl < step_min:
                raise StepSizeUnderflowError(
                    f"step-size underflow: controller demanded h={h_ctrl:.3e} ps at t={t:.6g}"
                )
    return out


def rk4_fixed(f, t0, t1, y0, nsteps):
    """Classical fixed-step RK4; reference path for convergence checks."""
    y = np.asarray(y0, dtype=complex).ravel().copy()
    h = (t1 - t0) / nsteps
    t = t0
    for _ in range(nsteps):
        k1 = f(t, y)
        k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y
