"""Run configuration: strict key-value / JSON parsing and validation.

Two equivalent source forms are accepted: a flat ``section.key = value``
text (``#`` comments, one pair per line) and a nested JSON object
``{"section": {"key": value}}``.  Unknown keys, duplicate keys, type
mismatches and constraint violations are all hard errors that name the
offending key (and line, for the text form).
"""

from dataclasses import dataclass
import json
import math

import numpy as np

from .core import DissipationParams, DriveParams
from .dynamics import PropagatorConfig
from .floquet import FloquetConfig

__all__ = ["ConfigError", "RunConfig", "SweepSpec", "parse_config"]

SWEEP_PARAMETERS = ("omega2", "delta2", "delta")
SWEEP_SCALES = ("linear", "quadratic-in-power")


class ConfigError(ValueError):
    """Invalid run configuration (unknown key, bad type or bad value)."""


@dataclass(frozen=True)
class SweepSpec:
    """One swept drive parameter with an inclusive linear or power-linear axis."""

    parameter: str
    minimum: float
    maximum: float
    points: int
    scale: str = "linear"

    def axis_values(self) -> np.ndarray:
        if self.scale == "quadratic-in-power":
            return np.sqrt(np.linspace(self.minimum ** 2, self.maximum ** 2, self.points))
        return np.linspace(self.minimum, self.maximum, self.points)


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs for single-trace and sweep runs."""

    omega1: float
    omega2: float = 0.0
    delta1: float = 0.0
    delta2: float = 0.0
    phi: float = 0.0
    frame_origin: float = 0.0
    gamma: float = 1.0
    gamma_prime: float = 0.0
    step_max: float | None = None
    rel_tol: float = 1e-8
    abs_tol: float = 1e-11
    t_transient_factor: float = 20.0
    ss_tol: float = 1e-10
    period_samples: int = 32
    omega_min: float = -100.0
    omega_max: float = 100.0
    omega_points: int = 801
    tau_step: float | None = None
    tau_max: float | None = None
    tail_tol: float = 1e-4
    window_fwhm: float | None = None
    floquet_order: int = 3
    sweep: SweepSpec | None = None

    def drive(self) -> DriveParams:
        return DriveParams(omega1=self.omega1, omega2=self.omega2,
                           delta1=self.delta1, delta2=self.delta2,
                           phi=self.phi, frame_origin=self.frame_origin)

    def dissipation(self) -> DissipationParams:
        return DissipationParams(gamma=self.gamma, gamma_prime=self.gamma_prime)

    def propagator(self) -> PropagatorConfig:
        return PropagatorConfig(step_max=self.step_max, rel_tol=self.rel_tol,
                                abs_tol=self.abs_tol,
                                t_transient_factor=self.t_transient_factor,
                                ss_tol=self.ss_tol,
                                period_samples=self.period_samples)

    def floquet(self) -> FloquetConfig:
        return FloquetConfig(order=self.floquet_order)

    def omega_grid(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.omega_points)

    def to_json_dict(self) -> dict:
        out = {
            "drive": {
                "omega1_ueV": self.omega1,
                "omega2_ueV": self.omega2,
                "delta1_ueV": self.delta1,
                "delta2_ueV": self.delta2,
                "phi_rad": self.phi,
                "frame_origin_ueV": self.frame_origin,
            },
            "dissipation": {
                "gamma_ueV": self.gamma,
                "gamma_prime_ueV": self.gamma_prime,
            },
            "numerics": {
                "rel_tol": self.rel_tol,
                "abs_tol": self.abs_tol,
                "t_transient_factor": self.t_transient_factor,
                "ss_tol": self.ss_tol,
                "period_samples": self.period_samples,
                "omega_min_ueV": self.omega_min,
                "omega_max_ueV": self.omega_max,
                "omega_points": self.omega_points,
                "tail_tol": self.tail_tol,
            },
            "floquet": {"order": self.floquet_order},
        }
        for key, val in (("step_max_ps", self.step_max),
                         ("tau_step_ps", self.tau_step),
                         ("tau_max_ps", self.tau_max),
                         ("window_fwhm_ueV", self.window_fwhm)):
            if val is not None:
                out["numerics"][key] = val
        if self.sweep is not None:
            out["sweep"] = {
                "parameter": self.sweep.parameter,
                "min": self.sweep.minimum,
                "max": self.sweep.maximum,
                "points": self.sweep.points,
                "scale": self.sweep.scale,
            }
        return out


# key -> (RunConfig attribute, type tag) with type tag in {float, int, str}
_KEY_TABLE = {
    "drive.omega1_ueV": ("omega1", float),
    "drive.omega2_ueV": ("omega2", float),
    "drive.delta1_ueV": ("delta1", float),
    "drive.delta2_ueV": ("delta2", float),
    "drive.phi_rad": ("phi", float),
    "drive.frame_origin_ueV": ("frame_origin", float),
    "dissipation.gamma_ueV": ("gamma", float),
    "dissipation.gamma_prime_ueV": ("gamma_prime", float),
    "numerics.step_max_ps": ("step_max", float),
    "numerics.rel_tol": ("rel_tol", float),
    "numerics.abs_tol": ("abs_tol", float),
    "numerics.t_transient_factor": ("t_transient_factor", float),
    "numerics.ss_tol": ("ss_tol", float),
    "numerics.period_samples": ("period_samples", int),
    "numerics.omega_min_ueV": ("omega_min", float),
    "numerics.omega_max_ueV": ("omega_max", float),
    "numerics.omega_points": ("omega_points", int),
    "numerics.tau_step_ps": ("tau_step", float),
    "numerics.tau_max_ps": ("tau_max", float),
    "numerics.tail_tol": ("tail_tol", float),
    "numerics.window_fwhm_ueV": ("window_fwhm", float),
    "floquet.order": ("floquet_order", int),
    "sweep.parameter": ("sweep.parameter", str),
    "sweep.min": ("sweep.min", float),
    "sweep.max": ("sweep.max", float),
    "sweep.points": ("sweep.points", int),
    "sweep.scale": ("sweep.scale", str),
}


def _coerce(key: str, raw, line: int | None):
    where = f" (line {line})" if line is not None else ""
    _, kind = _KEY_TABLE[key]
    if isinstance(raw, str):
        text = raw.strip()
        if kind is str:
            return text
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(f"type mismatch for {key}{where}: {text!r} is not a number")
    else:
        if kind is str:
            if not isinstance(raw, str):
                raise ConfigError(f"type mismatch for {key}{where}: expected a string")
            return raw
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ConfigError(f"type mismatch for {key}{where}: expected a number")
        value = float(raw)
    if kind is int:
        if not float(value).is_integer():
            raise ConfigError(f"type mismatch for {key}{where}: expected an integer")
        return int(value)
    if not math.isfinite(value):
        raise ConfigError(f"constraint violation for {key}{where}: value must be finite")
    return value


def _parse_text(text: str) -> dict:
    values: dict = {}
    lines: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw_line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in _KEY_TABLE:
            raise ConfigError(f"unknown key {key!r} (line {lineno})")
        if key in values:
            raise ConfigError(
                f"duplicate key {key!r} (line {lineno}, first seen line {lines[key]})"
            )
        values[key] = _coerce(key, raw, lineno)
        lines[key] = lineno
    return values


def _parse_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON config: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError("JSON config must be an object of sections")
    values: dict = {}
    for section, body in obj.items():
        if not isinstance(body, dict):
            raise ConfigError(f"type mismatch for section {section!r}: expected an object")
        for name, raw in body.items():
            key = f"{section}.{name}"
            if key not in _KEY_TABLE:
                raise ConfigError(f"unknown key {key!r}")
            values[key] = _coerce(key, raw, None)
    return values


def _build(values: dict) -> RunConfig:
    kwargs = {}
    sweep_raw = {}
    for key, value in values.items():
        attr, _ = _KEY_TABLE[key]
        if attr.startswith("sweep."):
            sweep_raw[attr.split(".", 1)[1]] = value
        else:
            kwargs[attr] = value
    if "omega1" not in kwargs:
        raise ConfigError("constraint violation: drive.omega1_ueV is required")
    sweep = None
    if sweep_raw:
        missing = {"parameter", "min", "max", "points"} - set(sweep_raw)
        if missing:
            raise ConfigError(
                f"constraint violation: sweep is missing {sorted(missing)}"
            )
        parameter = sweep_raw["parameter"]
        if parameter not in SWEEP_PARAMETERS:
            raise ConfigError(
                f"constraint violation for sweep.parameter: {parameter!r} not in {SWEEP_PARAMETERS}"
            )
        scale = sweep_raw.get("scale", "linear")
        if scale not in SWEEP_SCALES:
            raise ConfigError(
                f"constraint violation for sweep.scale: {scale!r} not in {SWEEP_SCALES}"
            )
        if scale == "quadratic-in-power" and parameter != "omega2":
            raise ConfigError(
                "constraint violation for sweep.scale: quadratic-in-power applies to omega2 only"
            )
        if sweep_raw["points"] < 2:
            raise ConfigError("constraint violation for sweep.points: need >= 2")
        if parameter == "omega2" and (sweep_raw["min"] < 0 or sweep_raw["max"] < 0):
            raise ConfigError("constraint violation for sweep range: omega2 must be >= 0")
        if sweep_raw["max"] < sweep_raw["min"]:
            raise ConfigError("constraint violation for sweep range: max < min")
        sweep = SweepSpec(parameter=parameter, minimum=float(sweep_raw["min"]),
                          maximum=float(sweep_raw["max"]),
                          points=int(sweep_raw["points"]), scale=scale)
    try:
        cfg = RunConfig(sweep=sweep, **kwargs)
    except TypeError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    def bad(key, why):
        raise ConfigError(f"constraint violation for {key}: {why}")

    try:
        cfg.drive()
    except ValueError as exc:
        raise ConfigError(f"constraint violation in drive parameters: {exc}") from exc
    try:
        cfg.dissipation()
    except ValueError as exc:
        raise ConfigError(f"constraint violation in dissipation parameters: {exc}") from exc
    try:
        cfg.floquet()
    except ValueError as exc:
        raise ConfigError(f"constraint violation for floquet.order: {exc}") from exc
    if cfg.gamma <= 0.0:
        bad("dissipation.gamma_ueV", "the spectrum engine requires gamma > 0")
    if cfg.omega_points < 2:
        bad("numerics.omega_points", "need >= 2 grid points")
    if not cfg.omega_min < cfg.omega_max:
        bad("numerics.omega_min_ueV", "need omega_min < omega_max")
    if cfg.period_samples < 1:
        bad("numerics.period_samples", "need >= 1")
    if cfg.rel_tol <= 0 or cfg.abs_tol <= 0:
        bad("numerics.rel_tol", "tolerances must be > 0")
    if cfg.tail_tol <= 0:
        bad("numerics.tail_tol", "must be > 0")
    if cfg.step_max is not None and cfg.step_max <= 0:
        bad("numerics.step_max_ps", "must be > 0")
    if cfg.tau_step is not None and cfg.tau_step <= 0:
        bad("numerics.tau_step_ps", "must be > 0")
    if cfg.tau_max is not None and cfg.tau_max <= 0:
        bad("numerics.tau_max_ps", "must be > 0")
    if cfg.window_fwhm is not None and cfg.window_fwhm <= 0:
        bad("numerics.window_fwhm_ueV", "must be > 0")
    if cfg.ss_tol <= 0:
        bad("numerics.ss_tol", "must be > 0")
    if cfg.t_transient_factor <= 0:
        bad("numerics.t_transient_factor", "must be > 0")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration from text (key-value or JSON form)."""
    stripped = text.lstrip()
    values = _parse_json(text) if stripped.startswith("{") else _parse_text(text)
    return _build(values)
