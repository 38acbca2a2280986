"""Scalar functionals along trajectories and inequality checkers.

Monitors turn the a priori estimates behind the global-regularity and
blow-up results into runtime assertions: weighted averages, energies,
sup norms, and the spectral analyticity-radius diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .grids import Field, norm, quadrature, weighted_pairing
from .operators import BoundaryCondition, derivative


class MonitorError(ValueError):
    pass


@dataclass
class MonitorSeries:
    """Time-stamped scalar functional recorded along one trajectory."""

    name: str
    times: list = field(default_factory=list)
    values: list = field(default_factory=list)

    def append(self, t: float, value: float):
        if self.times and t <= self.times[-1]:
            raise MonitorError(f"non-increasing time {t} in series {self.name}")
        self.times.append(float(t))
        self.values.append(float(value))

    def __len__(self) -> int:
        return len(self.times)

    @property
    def t(self) -> np.ndarray:
        return np.asarray(self.times)

    @property
    def v(self) -> np.ndarray:
        return np.asarray(self.values)


@dataclass(frozen=True)
class CheckResult:
    name: str
    holds: bool
    worst_margin: float
    worst_t: float
    applicable: bool = True

    def describe(self) -> str:
        if not self.applicable:
            return f"{self.name}: not-applicable"
        status = "holds" if self.holds else "VIOLATED"
        return f"{self.name}: {status} (worst margin {self.worst_margin:.3e} at t={self.worst_t:.4g})"


@dataclass(frozen=True)
class Monitor:
    name: str
    fn: Callable[[Field, float], float]

    def __call__(self, u: Field, t: float) -> float:
        return self.fn(u, t)


def analyticity_radius(u: Field) -> float:
    """Spectral decay rate: -slope of log|u_hat_k| against |k|.

    Fit over the band 2 <= k <= 2n/5, dropping coefficients below the
    1e-14 floor. Periodic layout only.
    """
    if u.grid.layout != "periodic":
        raise MonitorError("analyticity radius requires periodic layout")
    n = u.grid.n
    uh = np.abs(np.fft.rfft(u.values)) / n
    kmax = int(2 * n / 5)
    idx = np.arange(2, kmax + 1)
    idx = idx[uh[idx] > 1e-14]
    if len(idx) < 2:
        raise MonitorError("unresolved spectrum")
    k_phys = 2.0 * np.pi / u.grid.length * idx
    slope = np.polyfit(k_phys, np.log(uh[idx]), 1)[0]
    return float(-slope)


def evaluate(
    kind: str,
    u: Field,
    t: float,
    bc: Optional[BoundaryCondition] = None,
    weight: Optional[Field] = None,
) -> tuple[float, float]:
    """One monitor sample (t, value)."""
    if kind == "mass":
        val = quadrature(u)
    elif kind == "l2":
        val = norm(u, "L2")
    elif kind == "sup":
        val = u.sup()
    elif kind == "grad_sup":
        if bc is None:
            raise MonitorError("grad_sup needs a boundary condition")
        val = derivative(u, 1, bc).sup()
    elif kind == "weighted":
        if weight is None:
            raise MonitorError("weighted monitor needs a weight field")
        val = weighted_pairing(u, weight)
    elif kind == "ks_energy":
        if bc is None:
            raise MonitorError("ks_energy needs a boundary condition")
        ux = derivative(u, 1, bc)
        val = quadrature(ux.with_values(ux.values**2))
    elif kind == "analyticity_radius":
        val = analyticity_radius(u)
    else:
        raise MonitorError(f"unknown monitor kind {kind!r}")
    return (t, float(val))


def make_monitor(
    kind: str,
    bc: Optional[BoundaryCondition] = None,
    weight: Optional[Field] = None,
    name: Optional[str] = None,
) -> Monitor:
    return Monitor(
        name=name or kind,
        fn=lambda u, t: evaluate(kind, u, t, bc=bc, weight=weight)[1],
    )


# ---------------------------------------------------------------------------
# inequality checks
# ---------------------------------------------------------------------------

def check_max_principle(series: MonitorSeries, u0_sup: float, tol: float) -> CheckResult:
    """sup-norm series never exceeds its initial value (relative tol)."""
    if len(series) == 0:
        raise MonitorError("empty series")
    allowed = u0_sup + tol * u0_sup
    margins = allowed - series.v
    worst = int(np.argmin(margins))
    return CheckResult(
        name=f"max_principle[{series.name}]",
        holds=bool(margins[worst] >= 0.0),
        worst_margin=float(margins[worst]),
        worst_t=float(series.t[worst]),
    )


def check_riccati_bound(y: MonitorSeries, nu: float, tol: float) -> CheckResult:
    """y(t) <= (t/8 + 1/y(0))^{-1} + tol while the hyperbola is finite.

    Vacuous (not applicable) unless y(0) < -sqrt(8) nu.
    """
    if len(y) == 0:
        raise MonitorError("empty series")
    y0 = y.values[0]
    if not y0 < -math.sqrt(8.0) * nu:
        return CheckResult("riccati_bound", True, math.inf, y.times[0], applicable=False)
    t_star = -8.0 / y0
    mask = y.t < t_star
    bound = (y.t[mask] / 8.0 + 1.0 / y0) ** (-1.0)
    margins = bound + tol - y.v[mask]
    worst = int(np.argmin(margins))
    return CheckResult(
        name="riccati_bound",
        holds=bool(margins[worst] >= 0.0),
        worst_margin=float(margins[worst]),
        worst_t=float(y.t[mask][worst]),
    )


def _centered_dseries(series: MonitorSeries):
    t, v = series.t, series.v
    dv = (v[2:] - v[:-2]) / (t[2:] - t[:-2])
    return t[1:-1], v[1:-1], dv


def check_ode_inequality(series: MonitorSeries, form: str, tol: float, **params) -> CheckResult:
    """Trajectory ODE inequalities at every interior sample.

    forms:
        ks_mass      dm/dt >= lam1/(2 vol) m^2
        vhj_z        z' + lam1 z >= C z^p
        titi_energy  E(t) <= e^{t - t0} E(t0)   (integrated Gronwall form)
    Tolerance is relative to the dominant term's magnitude.
    """
    if len(series) < 2:
        raise MonitorError("need at least 2 samples")
    if form == "titi_energy":
        t, v = series.t, series.v
        bound = v[0] * np.exp(t - t[0])
        scale = np.maximum(np.abs(bound), 1e-300)
        margins = (bound * (1.0 + tol) - v) / scale
        worst = int(np.argmin(margins))
        return CheckResult(
            "titi_energy", bool(margins[worst] >= 0.0), float(margins[worst]), float(t[worst])
        )
    t, v, dv = _centered_dseries(series)
    if form == "ks_mass":
        lhs = dv
        rhs_v = params["lam1"] / (2.0 * params["vol"]) * v**2
    elif form == "vhj_z":
        lhs = dv + params["lam1"] * v
        rhs_v = params["C"] * np.sign(v) * np.abs(v) ** params["p"]
    else:
        raise MonitorError(f"unknown inequality form {form!r}")
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs_v)), 1e-300)
    margins = (lhs - rhs_v) / scale + tol
    worst = int(np.argmin(margins))
    return CheckResult(
        form, bool(margins[worst] >= 0.0), float(margins[worst]), float(t[worst])
    )


def check_monotone(series: MonitorSeries, direction: str = "increasing",
                   rel_tol: float = 1e-6, strict: bool = False) -> CheckResult:
    """Discrete monotonicity of a series (relative tolerance on dips)."""
    if len(series) < 2:
        raise MonitorError("need at least 2 samples")
    v = series.v
    steps = np.diff(v)
    if direction == "decreasing":
        steps = -steps
    scale = np.maximum(np.abs(v[:-1]), 1e-300)
    margins = steps / scale + (0.0 if strict else rel_tol)
    worst = int(np.argmin(margins))
    if strict:
        holds = bool(np.all(steps > 0.0))
    else:
        holds = bool(margins[worst] >= 0.0)
    return CheckResult(
        f"monotone_{direction}[{series.name}]",
        holds,
        float(margins[worst]),
        float(series.t[1:][worst]),
    )


def write_series_csv(series: MonitorSeries, path):
    """One CSV per monitor: header `t,<name>`, 17 significant digits, LF."""
    with open(path, "w", newline="") as fh:
        fh.write(f"t,{series.name}\n")
        for t, v in zip(series.times, series.values):
            fh.write(f"{t:.17g},{v:.17g}\n")
