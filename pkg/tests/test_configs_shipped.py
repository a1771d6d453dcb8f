"""Every shipped config runs end to end at desk scale."""

import io
import pathlib

import pytest

import twotone as tt
from twotone.pipeline import export_sweep_csv, export_trace_csv, run_spectrum, run_sweep

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / "configs"
CONFIG_FILES = sorted(CONFIG_DIR.glob("*.cfg"))


def test_expected_configs_shipped():
    names = {p.name for p in CONFIG_FILES}
    assert {"fig1.cfg", "fig2a.cfg", "fig2b.cfg",
            "fig3a.cfg", "fig3b.cfg", "fig4.cfg"} <= names


@pytest.mark.parametrize("path", CONFIG_FILES, ids=lambda p: p.name)
def test_config_runs_to_completion(path):
    cfg = tt.parse_config(path.read_text())
    buf = io.StringIO()
    if cfg.sweep is None:
        trace, overlay = run_spectrum(cfg)
        export_trace_csv(trace, buf)
        assert len(buf.getvalue().splitlines()) == 1 + cfg.omega_points
        assert overlay is not None and len(overlay) > 0
    else:
        result = run_sweep(cfg)
        assert result.complete
        export_sweep_csv(result, buf)
        expected = 1 + cfg.sweep.points * cfg.omega_points
        assert len(buf.getvalue().splitlines()) == expected
