import json
import math
import os

import numpy as np
import pytest

from blowup_plots.cli import main
from blowup_plots.render import FigureSpec, PlotError, load_report, load_series, render

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
E9_REPORT = os.path.join(FIXTURES, "E9", "report.json")
E3_REPORT = os.path.join(FIXTURES, "E3", "report.json")
COMPANION_REPORT = os.path.join(FIXTURES, "E9_companion", "report.json")


def test_figure_spec_validation(tmp_path):
    with pytest.raises(PlotError, match="kind"):
        FigureSpec(E9_REPORT, "pie_chart", str(tmp_path / "x.svg"))
    with pytest.raises(PlotError, match="format"):
        FigureSpec(E9_REPORT, "trajectory", str(tmp_path / "x.pdf")).format


def test_load_report_and_series():
    report = load_report(E9_REPORT)
    assert report["schema"] == 1
    series = load_series(E9_REPORT, report)
    assert set(series) == {"sup", "weighted_phi1"}
    t, y = series["weighted_phi1"]
    assert t[0] == 0.0
    assert y[0] == pytest.approx(-math.pi / 2, abs=1e-3)


def test_load_report_errors(tmp_path):
    with pytest.raises(PlotError, match="not found"):
        load_report(str(tmp_path / "nope.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(PlotError, match="malformed"):
        load_report(str(bad))


def test_bound_overlay_holds_below_hyperbola(tmp_path):
    # the plotted data itself must sit below the dashed bound everywhere
    report = load_report(E9_REPORT)
    series = load_series(E9_REPORT, report)
    t, y = series["weighted_phi1"]
    y0 = report["derived_quantities"]["y0"]
    mask = t < -8.0 / y0
    bound = (t[mask] / 8.0 + 1.0 / y0) ** (-1.0)
    assert np.all(y[mask] <= bound + 1e-3)

    out = render(FigureSpec(E9_REPORT, "bound_overlay", str(tmp_path / "b.svg")))
    assert os.path.getsize(out) > 1000


def test_ratio_plot_points_above_reference(tmp_path):
    report = load_report(E3_REPORT)
    series = load_series(E3_REPORT, report)
    x, ratio = series["ratio"]
    assert len(x) == 3
    assert np.all(ratio >= 9.0 * math.pi**2 / 128.0 * x)

    out = render(FigureSpec(E3_REPORT, "ratio_plot", str(tmp_path / "r.svg")))
    assert os.path.getsize(out) > 1000


def test_trajectory_of_companion_is_bounded(tmp_path):
    report = load_report(COMPANION_REPORT)
    series = load_series(COMPANION_REPORT, report)
    t, sup = series["sup"]
    assert np.max(sup) <= sup[0] * (1.0 + 1e-6)
    out = render(FigureSpec(COMPANION_REPORT, "trajectory", str(tmp_path / "t.png")))
    assert os.path.getsize(out) > 1000


def test_svg_rendering_is_byte_stable(tmp_path):
    outs = []
    for i in range(2):
        path = str(tmp_path / f"stable_{i}.svg")
        render(FigureSpec(E9_REPORT, "bound_overlay", path))
        with open(path, "rb") as fh:
            outs.append(fh.read())
    assert outs[0] == outs[1]
    # idempotent overwrite of the same path too
    path = str(tmp_path / "stable_0.svg")
    render(FigureSpec(E9_REPORT, "bound_overlay", path))
    with open(path, "rb") as fh:
        assert fh.read() == outs[0]


def test_fails_closed_on_empty_series(tmp_path):
    run_dir = tmp_path / "empty"
    run_dir.mkdir()
    (run_dir / "sup.csv").write_text("t,sup\n")
    report = {"schema": 1, "id": "empty", "artifact_paths": ["empty/sup.csv"],
              "derived_quantities": {}}
    rp = run_dir / "report.json"
    rp.write_text(json.dumps(report))
    with pytest.raises(PlotError, match="empty"):
        render(FigureSpec(str(rp), "trajectory", str(tmp_path / "e.svg")))


def test_missing_column_named_in_error(tmp_path):
    with pytest.raises(PlotError, match="analyticity_radius"):
        render(FigureSpec(E9_REPORT, "spectrum", str(tmp_path / "s.svg")))


def test_bound_overlay_requires_bound_parameters(tmp_path):
    with pytest.raises(PlotError, match="derived"):
        render(FigureSpec(COMPANION_REPORT, "bound_overlay", str(tmp_path / "b.svg")))


def test_cli_roundtrip(tmp_path, capsys):
    out = str(tmp_path / "fig.svg")
    assert main([E9_REPORT, "--kind", "trajectory", "--out", out]) == 0
    assert os.path.exists(out)
    assert main([E9_REPORT, "--kind", "spectrum", "--out",
                 str(tmp_path / "x.svg")]) == 1
