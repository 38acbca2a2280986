"""Time advancement: IMEX stepping, adaptive control, blow-up verdicts.

One step = Crank-Nicolson on the stiff linear part combined with a Heun
predictor-corrector on the explicit nonlinearity (second order overall).
Adaptive control compares a full step against two half steps; a genuine
singularity shows up as dt underflow with a growing watched functional,
which is classified as blow-up rather than solver failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .grids import Field
from .models import ModelSpec, split
from .monitors import Monitor, MonitorSeries
from .operators import LinearOperator, enforce_bc


class IntegratorError(RuntimeError):
    pass


@dataclass
class StepController:
    dt: float
    dt_min: float = 1e-14
    dt_max: float = math.inf
    safety: float = 0.9
    rtol: float = 1e-6
    atol: float = 1e-9
    adaptive: bool = False

    def __post_init__(self):
        if not (0.0 < self.dt_min <= self.dt <= self.dt_max):
            raise ValueError("need dt_min <= dt <= dt_max with dt_min > 0")
        if not (0.0 < self.safety <= 1.0):
            raise ValueError("safety must lie in (0, 1]")


@dataclass
class BlowupPolicy:
    sup_threshold: float = 1e6
    functional_threshold: float = 1e8
    watch: list = dc_field(default_factory=list)


@dataclass
class StepOutcome:
    status: str            # advanced | completed | blowup
    state: Field
    t: float
    t_star: Optional[float] = None
    trigger: Optional[str] = None


# negated stiff operators, cached so LU factorizations survive across steps
_NEG_STIFF: dict[ModelSpec, LinearOperator] = {}


def _neg_stiff(model: ModelSpec) -> LinearOperator:
    op = _NEG_STIFF.get(model)
    if op is None:
        op = split(model).stiff.scaled(-1.0)
        _NEG_STIFF[model] = op
    return op


def imex_step(model: ModelSpec, u: Field, t: float, dt: float) -> Field:
    """One CN/Heun IMEX step. Output may be non-finite (flagged, not raised)."""
    if dt == 0.0:
        return u
    s = split(model)
    neg = _neg_stiff(model)
    half = 0.5 * dt
    with np.errstate(over="ignore", invalid="ignore"):
        su = s.stiff(u).values
        nu_ = s.nonstiff(u).values
        base = u.values + half * su
        pred_rhs = u.with_values(base + dt * nu_, allow_nonfinite=True)
        if not np.all(np.isfinite(pred_rhs.values)):
            return pred_rhs
        star = neg.solve_shifted(half, pred_rhs)
        star = star.with_values(enforce_bc(star.values, model.bc))
        if not np.all(np.isfinite(star.values)):
            return u.with_values(star.values, allow_nonfinite=True)
        n_star = s.nonstiff(star).values
        corr_rhs = u.with_values(base + half * (nu_ + n_star), allow_nonfinite=True)
        if not np.all(np.isfinite(corr_rhs.values)):
            return corr_rhs
        out = neg.solve_shifted(half, corr_rhs)
        vals = enforce_bc(out.values, model.bc)
    return u.with_values(vals, allow_nonfinite=not np.all(np.isfinite(vals)))


def _finite(f: Field) -> bool:
    return bool(np.all(np.isfinite(f.values)))


def _step_error(full: Field, fine: Field, ctrl: StepController) -> float:
    if not (_finite(full) and _finite(fine)):
        return math.inf
    scale = ctrl.atol + ctrl.rtol * np.maximum(np.abs(full.values), np.abs(fine.values))
    return float(np.max(np.abs(full.values - fine.values) / scale))


_MAX_REJECTS = 40


def integrate(
    model: ModelSpec,
    u0: Field,
    t_end: float,
    ctrl: StepController,
    policy: BlowupPolicy,
    monitors: list[Monitor],
) -> tuple[StepOutcome, dict[str, MonitorSeries]]:
    """Advance to t_end or until a blow-up trigger fires.

    Monitors are sampled at every accepted step (no thinning near
    blow-up). Deterministic for identical inputs.
    """
    series = {m.name: MonitorSeries(m.name) for m in monitors}
    watch_names = [n for n in policy.watch if n in series]

    def record(u: Field, t: float):
        for m in monitors:
            series[m.name].append(t, m(u, t))

    def watched_trigger(t: float) -> Optional[str]:
        for name in watch_names:
            s = series[name]
            if s.values and abs(s.values[-1]) > policy.functional_threshold:
                return f"watched functional {name} exceeded {policy.functional_threshold:g}"
        return None

    def watched_growing() -> bool:
        for name in watch_names:
            v = series[name].values
            if len(v) >= 2 and abs(v[-1]) > 2.0 * abs(v[0]) and abs(v[-1]) > abs(v[-2]):
                return True
        return False

    u, t = u0, 0.0
    record(u, t)
    dt = min(ctrl.dt, ctrl.dt_max, t_end)

    def blowup(state: Field, t_star: float, trigger: str) -> StepOutcome:
        return StepOutcome("blowup", state, t_star, t_star=t_star, trigger=trigger)

    while t < t_end * (1.0 - 1e-13):
        dt_try = min(dt, t_end - t)
        if ctrl.adaptive:
            rejects = 0
            while True:
                full = imex_step(model, u, t, dt_try)
                mid = imex_step(model, u, t, 0.5 * dt_try)
                fine = (
                    imex_step(model, mid, t + 0.5 * dt_try, 0.5 * dt_try)
                    if _finite(mid)
                    else mid
                )
                err = _step_error(full, fine, ctrl)
                if err <= 1.0:
                    u_new = fine
                    break
                factor = max(0.2, ctrl.safety * err ** (-1.0 / 3.0)) if math.isfinite(err) else 0.2
                dt_next = dt_try * factor
                if dt_next < ctrl.dt_min:
                    if watched_growing():
                        return blowup(u, t, "dt underflow with growing watched functional"), series
                    raise IntegratorError("step failure without blow-up trigger")
                dt_try = dt_next
                rejects += 1
                if rejects > _MAX_REJECTS:
                    raise IntegratorError("step failure without blow-up trigger")
            grow = 5.0 if err == 0.0 else min(5.0, ctrl.safety * err ** (-1.0 / 3.0))
            dt = min(max(dt_try * grow, ctrl.dt_min), ctrl.dt_max)
        else:
            u_new = imex_step(model, u, t, dt_try)

        if not _finite(u_new):
            return blowup(u, t, "non-finite state"), series
        t = t + dt_try
        u = u_new
        record(u, t)
        if u.sup() > policy.sup_threshold:
            return blowup(u, t, f"sup norm exceeded {policy.sup_threshold:g}"), series
        trig = watched_trigger(t)
        if trig is not None:
            return blowup(u, t, trig), series

    return StepOutcome("completed", u, t), series


def estimate_blowup_time(series: MonitorSeries) -> float:
    """Extrapolated singularity time from the hyperbolic tail of a series.

    Fits 1/|value| against t over the monotone tail and extrapolates the
    zero crossing; returns +inf when the trend does not cross zero.
    """
    if len(series) < 4:
        raise ValueError("need at least 4 samples")
    t = series.t
    w = np.abs(series.v)
    if np.any(w <= 0.0):
        keep = w > 0.0
        t, w = t[keep], w[keep]
        if len(t) < 4:
            raise ValueError("need at least 4 nonzero samples")
    inv = 1.0 / w
    # longest tail over which 1/|value| is strictly decreasing
    start = len(inv) - 1
    while start > 0 and inv[start - 1] > inv[start]:
        start -= 1
    tail_t, tail_inv = t[start:], inv[start:]
    if len(tail_t) < 4:
        tail_t, tail_inv = t[-4:], inv[-4:]
    if np.ptp(tail_inv) <= 1e-12 * np.max(tail_inv):
        return math.inf  # flat tail: no singular trend
    slope, intercept = np.polyfit(tail_t, tail_inv, 1)
    if slope >= 0.0:
        return math.inf
    t_star = -intercept / slope
    if t_star < tail_t[-1]:
        return float(tail_t[-1])
    return float(t_star)
