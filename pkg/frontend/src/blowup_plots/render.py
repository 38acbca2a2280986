"""Figure rendering from report JSON + CSV artifacts.

Four figure kinds:
    trajectory     every recorded series against time
    bound_overlay  computed functional vs its analytic bound (dashed),
                   with the post-bound region shaded
    ratio_plot     counterexample ratio against log(1/eps) with the
                   analytic reference slope
    spectrum       the spectral-decay (analyticity radius) diagnostic

Rendering is deterministic: fixed hash salt, no timestamps in output,
so re-running overwrites with byte-identical SVG. Fails closed on
empty series and missing columns.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "blowup-plots"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

KINDS = ("trajectory", "bound_overlay", "ratio_plot", "spectrum")

# metadata that strips creation timestamps and tool stamps from output
_SVG_METADATA = {"Date": None, "Creator": "blowup-plots", "Source": None}
_PNG_METADATA = {"Software": "blowup-plots"}


class PlotError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    report_path: str
    kind: str
    out_path: str

    @property
    def format(self) -> str:
        ext = os.path.splitext(self.out_path)[1].lstrip(".").lower()
        if ext not in ("png", "svg"):
            raise PlotError(f"unsupported output format {ext!r} (png or svg)")
        return ext

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PlotError(f"unknown figure kind {self.kind!r}")


def load_report(path: str) -> dict:
    try:
        with open(path) as fh:
            report = json.load(fh)
    except FileNotFoundError as exc:
        raise PlotError(f"report not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise PlotError(f"malformed JSON in {path}: {exc}") from exc
    if report.get("schema") != 1:
        raise PlotError(f"unsupported report schema {report.get('schema')!r}")
    return report


def _resolve_artifact(report_path: str, rel: str) -> str:
    run_dir = os.path.dirname(os.path.abspath(report_path))
    candidates = [
        os.path.join(os.path.dirname(run_dir), rel),  # rel includes the run dir
        os.path.join(run_dir, os.path.basename(rel)),
    ]
    for c in candidates:
        if os.path.exists(c):
            return c
    raise PlotError(f"artifact {rel!r} not found near {report_path}")


def load_series(report_path: str, report: dict) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """All CSV series of a report as name -> (t, values)."""
    series = {}
    for rel in report.get("artifact_paths", []):
        if not rel.endswith(".csv"):
            continue
        path = _resolve_artifact(report_path, rel)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows or len(rows[0]) != 2 or rows[0][0] != "t":
            raise PlotError(f"{path}: expected header 't,<name>'")
        name = rows[0][1]
        if len(rows) < 2:
            raise PlotError(f"{path}: series {name!r} is empty")
        data = np.array([[float(a), float(b)] for a, b in rows[1:]])
        series[name] = (data[:, 0], data[:, 1])
    if not series:
        raise PlotError(f"report {report.get('id')!r} lists no CSV artifacts")
    return series


def _require_series(series: dict, name: str) -> tuple[np.ndarray, np.ndarray]:
    if name not in series:
        raise PlotError(f"missing series column {name!r}")
    return series[name]


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=100)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _draw_trajectory(ax, report, series):
    for name in sorted(series):
        t, v = series[name]
        ax.plot(t, v, label=name)
    ax.set_xlabel("t")
    ax.legend()


def _draw_bound_overlay(ax, report, series):
    derived = report.get("derived_quantities", {})
    if "y0" in derived:
        t, y = _require_series(series, "weighted_phi1")
        y0 = derived["y0"]
        t_star = -8.0 / y0
        tb = np.linspace(0.0, min(float(t[-1]), 0.98 * t_star), 400)
        bound = (tb / 8.0 + 1.0 / y0) ** (-1.0)
        ax.plot(t, y, label="weighted average y(t)")
        ax.plot(tb, bound, "k--", label="analytic bound")
        lo = min(float(np.min(y)), float(np.min(bound)))
        ax.fill_between(tb, bound, lo * 1.1, color="0.85",
                        label="excluded by bound")
        ax.set_xlabel("t")
        ax.legend()
        return
    if "m0" in derived and "lambda1" in derived:
        t, m = _require_series(series, "mass")
        m0, lam1 = derived["m0"], derived["lambda1"]
        vol = 2.0 * math.pi  # |Omega| recovered from the echoed domain
        echo = report.get("config_echo", {}).get("domain")
        if echo:
            vol = float(echo["b"]) - float(echo["a"])
        c = lam1 * m0 / (2.0 * vol)
        tb = np.linspace(0.0, min(float(t[-1]), 0.98 / c), 400)
        lower = m0 / (1.0 - c * tb)
        ax.plot(t, m, label="mass m(t)")
        ax.plot(tb, lower, "k--", label="lower solution")
        ax.fill_between(tb, lower, float(np.min(m)) * 0.9, color="0.85",
                        label="excluded by bound")
        ax.set_xlabel("t")
        ax.legend()
        return
    raise PlotError("bound_overlay needs derived quantities y0, or m0 and lambda1")


def _draw_ratio_plot(ax, report, series):
    x, ratio = _require_series(series, "ratio")
    slope = 9.0 * math.pi**2 / 128.0
    ax.plot(x, ratio, "o-", label="computed ratio")
    xs = np.linspace(0.0, float(x[-1]) * 1.05, 50)
    ax.plot(xs, slope * xs, "k--", label=r"reference slope $9\pi^2/128$")
    ax.set_xlabel(r"$\log(1/\epsilon)$")
    ax.legend()


def _draw_spectrum(ax, report, series):
    t, sigma = _require_series(series, "analyticity_radius")
    ax.plot(t, sigma, label="spectral decay rate")
    ax.axhline(0.0, color="k", linewidth=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("radius estimate")
    ax.legend()


_DRAWERS = {
    "trajectory": _draw_trajectory,
    "bound_overlay": _draw_bound_overlay,
    "ratio_plot": _draw_ratio_plot,
    "spectrum": _draw_spectrum,
}


def render(spec: FigureSpec) -> str:
    """Render the figure and return the output path."""
    fmt = spec.format  # validate before any I/O
    report = load_report(spec.report_path)
    series = load_series(spec.report_path, report)

    fig, ax = _new_axes(f"{report.get('id', '?')}: {spec.kind}")
    try:
        _DRAWERS[spec.kind](ax, report, series)
        out_dir = os.path.dirname(os.path.abspath(spec.out_path))
        os.makedirs(out_dir, exist_ok=True)
        metadata = _SVG_METADATA if fmt == "svg" else _PNG_METADATA
        fig.savefig(spec.out_path, format=fmt, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.out_path
