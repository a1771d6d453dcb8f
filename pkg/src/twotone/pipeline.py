"""Single-trace and sweep orchestration plus CSV/JSON export.

Sweep points are independent jobs; failures at individual points are
recorded and the remaining points still complete.  Assembly is in axis
order regardless of worker scheduling, so results do not depend on the
degree of parallelism.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
import hashlib
import json
import time

import numpy as np

from . import __version__
from .config import RunConfig
from .floquet import floquet_overlay
from .spectrum import SpectrumTrace, incoherent_spectrum

__all__ = [
    "SweepResult",
    "point_config",
    "run_spectrum",
    "run_sweep",
    "export_trace_csv",
    "export_sweep_csv",
    "export_overlay_csv",
    "export_json",
]


@dataclass(frozen=True)
class SweepResult:
    """Spectra over one swept axis, all sharing a single frequency grid."""

    parameter: str
    axis: np.ndarray
    omega_rel: np.ndarray
    traces: list            # SpectrumTrace or None per axis point
    overlays: list          # ndarray of transition energies or None
    errors: list            # (index, message) for failed points
    provenance: dict

    @property
    def complete(self) -> bool:
        return not self.errors


def _provenance(cfg: RunConfig, wall_time_s: float) -> dict:
    canon = json.dumps(cfg.to_json_dict(), sort_keys=True)
    return {
        "config_sha256": hashlib.sha256(canon.encode()).hexdigest(),
        "package_version": __version__,
        "numpy_version": np.__version__,
        "wall_time_s": wall_time_s,
    }


def run_spectrum(cfg: RunConfig, overlay_order: int | None = None):
    """Compute one spectrum trace and its Floquet overlay.

    Returns (SpectrumTrace, overlay) where the overlay is the array of
    harmonic-expansion transition energies inside the frequency window
    (None when the drive is degenerate, where no beat harmonics exist).
    """
    if cfg.sweep is not None:
        raise ValueError("config has a sweep axis; use run_sweep")
    p = cfg.drive()
    d = cfg.dissipation()
    grid = cfg.omega_grid()
    trace = incoherent_spectrum(grid, p, d, cfg.propagator(),
                                tau_step=cfg.tau_step, tau_max=cfg.tau_max,
                                tail_tol=cfg.tail_tol, window_fwhm=cfg.window_fwhm)
    overlay = None
    if p.delta != 0.0:
        fcfg = cfg.floquet() if overlay_order is None else \
            replace(cfg.floquet(), order=overlay_order)
        overlay = floquet_overlay(p, fcfg, grid)
    return trace, overlay


def point_config(cfg: RunConfig, value: float) -> RunConfig:
    """Config for one sweep point: the swept parameter pinned to ``value``."""
    if cfg.sweep is None:
        raise ValueError("config has no sweep axis")
    param = cfg.sweep.parameter
    if param == "omega2":
        updated = replace(cfg, sweep=None, omega2=float(value))
    elif param == "delta2":
        updated = replace(cfg, sweep=None, delta2=float(value))
    else:  # delta: beat frequency omega_2 - omega_1 = delta1 - delta2
        updated = replace(cfg, sweep=None, delta2=cfg.delta1 - float(value))
    return updated


def _run_point(args):
    index, cfg, overlay_order = args
    try:
        trace, overlay = run_spectrum(cfg, overlay_order=overlay_order)
        return index, trace, overlay, None
    except Exception as exc:  # per-point isolation: record, keep sweeping
        return index, None, None, f"{type(exc).__name__}: {exc}"


def run_sweep(cfg: RunConfig, threads: int = 1,
              overlay_order: int | None = None) -> SweepResult:
    """Run every sweep point independently and assemble in axis order."""
    if cfg.sweep is None:
        raise ValueError("config has no sweep axis; use run_spectrum")
    started = time.perf_counter()
    axis = cfg.sweep.axis_values()
    jobs = [(i, point_config(cfg, v), overlay_order) for i, v in enumerate(axis)]
    results = [None] * len(jobs)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for index, trace, overlay, err in pool.map(_run_point, jobs):
                results[index] = (trace, overlay, err)
    else:
        for job in jobs:
            index, trace, overlay, err = _run_point(job)
            results[index] = (trace, overlay, err)
    traces = [r[0] for r in results]
    overlays = [r[1] for r in results]
    errors = [(i, r[2]) for i, r in enumerate(results) if r[2] is not None]
    return SweepResult(
        parameter=cfg.sweep.parameter,
        axis=axis,
        omega_rel=cfg.omega_grid(),
        traces=traces,
        overlays=overlays,
        errors=errors,
        provenance=_provenance(cfg, time.perf_counter() - started),
    )


def _fmt(x: float) -> str:
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def export_trace_csv(trace: SpectrumTrace, fh) -> None:
    fh.write("omega_rel_ueV,intensity\n")
    for w, s in zip(trace.omega_rel, trace.values):
        fh.write(f"{_fmt(w)},{_fmt(s)}\n")


def export_sweep_csv(result: SweepResult, fh) -> None:
    fh.write("axis_value,omega_rel_ueV,intensity\n")
    for value, trace in zip(result.axis, result.traces):
        if trace is None:
            continue
        av = _fmt(value)
        for w, s in zip(trace.omega_rel, trace.values):
            fh.write(f"{av},{_fmt(w)},{_fmt(s)}\n")


def export_overlay_csv(overlays, axis, fh) -> None:
    """Overlay lines; ``axis`` is None for a single trace."""
    if axis is None:
        fh.write("transition_ueV\n")
        for t in overlays if overlays is not None else ():
            fh.write(f"{_fmt(t)}\n")
        return
    fh.write("axis_value,transition_ueV\n")
    for value, overlay in zip(axis, overlays):
        if overlay is None:
            continue
        av = _fmt(value)
        for t in overlay:
            fh.write(f"{av},{_fmt(t)}\n")


def _trace_obj(trace: SpectrumTrace, axis_value=None):
    obj = {
        "omega_rel_ueV": [float(w) for w in trace.omega_rel],
        "intensity": [float(s) for s in trace.values],
    }
    if axis_value is not None:
        obj["axis_value"] = float(axis_value)
    return obj


def export_json(obj, cfg: RunConfig, fh, overlay=None, wall_time_s: float = 0.0) -> None:
    """Serialize one trace or a sweep result with config and provenance."""
    if isinstance(obj, SweepResult):
        payload = {
            "config": cfg.to_json_dict(),
            "sweep_parameter": obj.parameter,
            "axis_values": [float(v) for v in obj.axis],
            "traces": [None if t is None else _trace_obj(t, v)
                       for v, t in zip(obj.axis, obj.traces)],
            "overlays": [None if o is None else [float(t) for t in o]
                         for o in obj.overlays],
            "errors": [{"index": i, "message": m} for i, m in obj.errors],
            "provenance": obj.provenance,
        }
    else:
        payload = {
            "config": cfg.to_json_dict(),
            "trace": _trace_obj(obj),
            "overlay": None if overlay is None else [float(t) for t in overlay],
            "provenance": _provenance(cfg, wall_time_s),
        }
    json.dump(payload, fh, indent=1)
    fh.write("\n")
