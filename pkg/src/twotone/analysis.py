"""Peak extraction, spectral weights, symmetry residuals and instrument blur."""

from dataclasses import dataclass

import numpy as np
import scipy.signal

from .spectrum import SpectrumTrace

__all__ = [
    "Peak",
    "find_peaks",
    "peak_weight",
    "mirror_residual",
    "convolve_lorentzian",
]


@dataclass(frozen=True)
class Peak:
    """A spectral line: sub-grid center, height, width and integrated area."""

    center: float   # ueV, parabolic-refined
    height: float   # arb.
    fwhm: float     # ueV, half-height crossing interpolation
    weight: float   # arb., trapezoid area over the peak's base window


def _uniform_step(grid: np.ndarray) -> float:
    steps = np.diff(grid)
    if steps.size == 0 or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ValueError("trace grid must be uniform")
    return float(steps[0])


def _parabolic_refine(x, y, i):
    """3-point parabola through (i-1, i, i+1); returns (center, height)."""
    if i == 0 or i == len(y) - 1:
        return float(x[i]), float(y[i])
    ym, y0, yp = y[i - 1], y[i], y[i + 1]
    denom = ym - 2.0 * y0 + yp
    if denom == 0.0:
        return float(x[i]), float(y0)
    p = 0.5 * (ym - yp) / denom
    dx = x[1] - x[0]
    return float(x[i] + p * dx), float(y0 - 0.25 * (ym - yp) * p)


def _half_height_width(x, y, i, height) -> float:
    """FWHM from linear interpolation of the half-height crossings."""
    half = 0.5 * height
    n = len(y)
    j = i
    while j > 0 and y[j] > half:
        j -= 1
    if y[j] > half:
        left = x[0]
    else:
        f = (half - y[j]) / (y[j + 1] - y[j])
        left = x[j] + f * (x[j + 1] - x[j])
    j = i
    while j < n - 1 and y[j] > half:
        j += 1
    if y[j] > half:
        right = x[-1]
    else:
        f = (half - y[j - 1]) / (y[j] - y[j - 1])
        right = x[j - 1] + f * (x[j] - x[j - 1])
    return float(max(right - left, 1e-12))


def find_peaks(trace: SpectrumTrace, min_prominence: float = 0.01) -> list[Peak]:
    """Local maxima with prominence >= min_prominence * max(trace).

    Centers are refined with a 3-point parabola; the weight integrates the
    trace between the prominence bases of each peak.
    """
    x = np.asarray(trace.omega_rel, dtype=float)
    y = np.asarray(trace.values, dtype=float)
    if x.size == 0:
        raise ValueError("trace is empty")
    _uniform_step(x)
    top = float(y.max())
    if top <= 0.0:
        return []
    idx, props = scipy.signal.find_peaks(y, prominence=min_prominence * top)
    peaks = []
    for i, lb, rb in zip(idx, props["left_bases"], props["right_bases"]):
        center, height = _parabolic_refine(x, y, i)
        fwhm = _half_height_width(x, y, i, height)
        weight = float(np.trapezoid(y[lb:rb + 1], x[lb:rb + 1]))
        peaks.append(Peak(center=center, height=height, fwhm=fwhm, weight=weight))
    return peaks


def peak_weight(trace: SpectrumTrace, center: float, half_window: float) -> float:
    """Trapezoid integral of the trace over [center - w, center + w]."""
    x = np.asarray(trace.omega_rel, dtype=float)
    y = np.asarray(trace.values, dtype=float)
    lo, hi = center - half_window, center + half_window
    if lo < x[0] or hi > x[-1]:
        raise ValueError(
            f"window out of range: [{lo:.6g}, {hi:.6g}] outside [{x[0]:.6g}, {x[-1]:.6g}]"
        )
    inside = (x > lo) & (x < hi)
    xs = np.concatenate(([lo], x[inside], [hi]))
    ys = np.concatenate(([np.interp(lo, x, y)], y[inside], [np.interp(hi, x, y)]))
    return float(np.trapezoid(ys, xs))


def mirror_residual(trace_a: SpectrumTrace, trace_b: SpectrumTrace) -> float:
    """max |A(w) - B(-w)| / max A, for B sampled on the negated grid of A."""
    xa = np.asarray(trace_a.omega_rel, dtype=float)
    xb = np.asarray(trace_b.omega_rel, dtype=float)
    if xa.shape != xb.shape or not np.allclose(xa, -xb[::-1], rtol=0.0, atol=1e-9):
        raise ValueError("grid mismatch: trace_b must be sampled on the negated grid")
    diff = np.abs(np.asarray(trace_a.values) - np.asarray(trace_b.values)[::-1])
    return float(diff.max() / np.abs(trace_a.values).max())


def convolve_lorentzian(trace: SpectrumTrace, fwhm: float) -> SpectrumTrace:
    """Blur with a unit-area Lorentzian, edge-truncated and renormalized."""
    if fwhm <= 0.0:
        raise ValueError("fwhm must be > 0")
    x = np.asarray(trace.omega_rel, dtype=float)
    y = np.asarray(trace.values, dtype=float)
    step = _uniform_step(x)
    if step >= fwhm / 4.0:
        raise ValueError(
            f"grid too coarse: step {step:.4g} ueV must be < fwhm/4 = {fwhm / 4.0:.4g}"
        )
    half = 0.5 * fwhm
    span = np.arange(-(x.size - 1), x.size) * step
    kernel = (half / np.pi) / (span * span + half * half)
    num = np.convolve(y, kernel, mode="valid") * step
    den = np.convolve(np.ones_like(y), kernel, mode="valid") * step
    md = dict(trace.metadata)
    md["instrument_fwhm_uev"] = fwhm
    return SpectrumTrace(omega_rel=x, values=num / den, metadata=md)
