"""Command-line interface: spectrum, sweep, floquet and phonon-rate.

Data goes to files under --out (or to stdout when --out is omitted); all
diagnostics go to stderr.  Exit codes: 0 success, 1 configuration error,
2 numerical failure, 3 partial sweep failure.
"""

import argparse
import logging
import pathlib
import sys
import time

from .config import ConfigError, parse_config
from .floquet import FloquetConfig, transition_frequencies
from .phonon import PhononParams, dephasing_rate
from .pipeline import (
    export_json,
    export_overlay_csv,
    export_sweep_csv,
    export_trace_csv,
    run_spectrum,
    run_sweep,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_PARTIAL = 3

log = logging.getLogger("twotone")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twotone",
        description="Two-tone driven emitter: incoherent spectra and Floquet lines",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, sweepy=False):
        sp.add_argument("--config", required=True, help="path to a run config")
        sp.add_argument("--out", default=None, help="output directory (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--overlay-order", type=int, default=None,
                        help="harmonic order of the transition overlay")
        if sweepy:
            sp.add_argument("--threads", type=int, default=1,
                            help="worker processes for sweep points")

    add_common(sub.add_parser("spectrum", help="single incoherent spectrum"))
    add_common(sub.add_parser("sweep", help="spectra along one swept axis"), sweepy=True)
    add_common(sub.add_parser("floquet", help="transition energies only (fast)"))

    ph = sub.add_parser("phonon-rate", help="drive-induced pure dephasing estimate")
    ph.add_argument("--omega", type=float, required=True, help="Rabi energy in ueV")
    ph.add_argument("--alpha", type=float, default=0.1, help="coupling in ps^2")
    ph.add_argument("--temperature", type=float, default=4.2, help="temperature in K")
    ph.add_argument("--omega-b", type=float, default=900.0, help="cutoff in ueV")
    return parser


def _load_config(path: str):
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)


def _open_out(out_dir, name):
    if out_dir is None:
        return sys.stdout, False
    directory = pathlib.Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return open(directory / name, "w", encoding="utf-8"), True


def _write(out_dir, name, writer):
    fh, close = _open_out(out_dir, name)
    try:
        writer(fh)
    finally:
        if close:
            fh.close()
        else:
            fh.flush()


def _cmd_spectrum(args) -> int:
    cfg = _load_config(args.config)
    if cfg.sweep is not None:
        raise ConfigError("config has a sweep axis; use the sweep subcommand")
    started = time.perf_counter()
    trace, overlay = run_spectrum(cfg, overlay_order=args.overlay_order)
    wall = time.perf_counter() - started
    log.info("spectrum computed in %.1f s", wall)
    if args.format == "json":
        _write(args.out, "spectrum.json",
               lambda fh: export_json(trace, cfg, fh, overlay=overlay, wall_time_s=wall))
    else:
        _write(args.out, "spectrum.csv", lambda fh: export_trace_csv(trace, fh))
        if overlay is not None and args.out is not None:
            _write(args.out, "spectrum_overlay.csv",
                   lambda fh: export_overlay_csv(overlay, None, fh))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    if cfg.sweep is None:
        raise ConfigError("config has no sweep axis; use the spectrum subcommand")
    result = run_sweep(cfg, threads=args.threads, overlay_order=args.overlay_order)
    for index, message in result.errors:
        log.error("sweep point %d (%s=%.6g) failed: %s",
                  index, result.parameter, result.axis[index], message)
    if args.format == "json":
        _write(args.out, "sweep.json", lambda fh: export_json(result, cfg, fh))
    else:
        _write(args.out, "sweep.csv", lambda fh: export_sweep_csv(result, fh))
        if args.out is not None:
            _write(args.out, "sweep_overlay.csv",
                   lambda fh: export_overlay_csv(result.overlays, result.axis, fh))
    return EXIT_OK if result.complete else EXIT_PARTIAL


def _cmd_floquet(args) -> int:
    cfg = _load_config(args.config)
    order = cfg.floquet_order if args.overlay_order is None else args.overlay_order
    transitions = transition_frequencies(cfg.drive(), FloquetConfig(order=order))

    def write(fh):
        fh.write("transition_ueV\n")
        for t in transitions:
            fh.write(f"{float(t)!r}\n")

    _write(args.out, "floquet.csv", write)
    return EXIT_OK


def _cmd_phonon_rate(args) -> int:
    ph = PhononParams(alpha=args.alpha, temperature=args.temperature,
                      omega_b=args.omega_b)
    rate = dephasing_rate(ph, args.omega)
    sys.stdout.write(f"{rate!r}\n")
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    args = _build_parser().parse_args(argv)
    handlers = {
        "spectrum": _cmd_spectrum,
        "sweep": _cmd_sweep,
        "floquet": _cmd_floquet,
        "phonon-rate": _cmd_phonon_rate,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except ValueError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except Exception as exc:  # numerical or I/O failure
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
