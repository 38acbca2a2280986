"""Functional-inequality verification and the blow-up threshold chain.

Covers: finiteness of the negative-power eigenfunction integral, the
weighted Poincare inequality for p > 2 with its explicit log-plateau
counterexample at p = 2, and the assembled constant chain that yields
the conservative blow-up threshold K.

Singular-endpoint integrals use grids graded quadratically toward the
endpoints; uniform trapezoid converges too slowly there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import Field, Grid1D
from .monitors import CheckResult


class InequalityError(ValueError):
    pass


def _graded_nodes(a: float, b: float, n: int) -> np.ndarray:
    """Nodes on [a, b] clustered quadratically at both endpoints."""
    s = np.linspace(0.0, 1.0, n + 1)
    g = 3.0 * s**2 - 2.0 * s**3  # smoothstep: x - a ~ (b-a) s^2 near ends
    return a + (b - a) * g


def _trapz(y: np.ndarray, x: np.ndarray) -> float:
    return float(np.trapezoid(y, x))


def phi_negative_power_integral(
    alpha: float, refinement_levels: int = 8, n0: int = 512
) -> tuple[float, bool]:
    """Graded-quadrature value of the integral of sin(x)^(-alpha) on (0, pi).

    Returns (value at the finest level, converged flag). For alpha >= 1
    the integral diverges and the flag is False with the value still
    reported (it keeps growing under refinement).
    """
    if alpha <= 0:
        raise InequalityError("alpha must be positive")
    values = []
    for lvl in range(refinement_levels):
        x = _graded_nodes(0.0, math.pi, n0 * 2**lvl)
        xi = x[1:-1]  # open rule: skip the singular endpoints
        y = np.sin(xi) ** (-alpha)
        # endpoint panels from the local expansion sin(x)^-a ~ x^-a (1 + a x^2/6)
        core = _trapz(y, xi)
        if alpha < 1.0:
            edge = xi[0] ** (1.0 - alpha) / (1.0 - alpha) \
                + alpha * xi[0] ** (3.0 - alpha) / (6.0 * (3.0 - alpha))
            core += 2.0 * edge
        values.append(core)
    v = np.array(values)
    diffs = np.abs(np.diff(v))
    shrinking = bool(np.all(diffs[1:] <= 0.9 * diffs[:-1] + 1e-12))
    converged = bool(
        alpha < 1.0 and shrinking and diffs[-1] <= 1e-3 * abs(v[-1]) + 1e-9
    )
    return float(v[-1]), converged


def _v_eps_pieces(eps: float):
    """Closed-form pieces of the log-plateau counterexample on [0, pi]."""
    e2 = eps**2

    def v(x):
        x = np.asarray(x)
        out = np.zeros_like(x)
        left = (x >= e2) & (x < eps)
        out[left] = np.log(x[left] / e2)
        mid = (x >= eps) & (x <= math.pi - eps)
        out[mid] = math.log(1.0 / eps)
        right = (x > math.pi - eps) & (x <= math.pi - e2)
        out[right] = np.log((math.pi - x[right]) / e2)
        return out

    return v


def counterexample_ratio(eps: float, n_per_piece: int = 4000) -> tuple[float, float]:
    """Rayleigh-type ratio of the log-plateau function against the bound.

    ratio = (int v_eps sin dx)^2 / int (v_eps')^2 sin dx, computed by
    piecewise quadrature with geometric grading on the log ramps;
    also returns the analytic lower bound (9 pi^2 / 128) log(1/eps).
    """
    if not (0.0 < eps < math.pi / 4.0):
        raise InequalityError("eps must lie in (0, pi/4)")
    e2 = eps**2
    v = _v_eps_pieces(eps)

    # numerator: ramps need geometric nodes (integrand ~ log), plateau is smooth
    ramp = np.geomspace(e2, eps, n_per_piece)
    plateau = np.linspace(eps, math.pi - eps, n_per_piece)
    num = _trapz(v(ramp) * np.sin(ramp), ramp)
    num += _trapz(v(plateau) * np.sin(plateau), plateau)
    num += _trapz(v(math.pi - ramp[::-1]) * np.sin(math.pi - ramp[::-1]), math.pi - ramp[::-1])

    # denominator: (v')^2 = 1/x^2 on the ramps only (mirror-symmetric)
    den = 2.0 * _trapz(np.sin(ramp) / ramp**2, ramp)

    bound = 9.0 * math.pi**2 / 128.0 * math.log(1.0 / eps)
    return float(num**2 / den), float(bound)


@dataclass(frozen=True)
class ConstantChain:
    """Constants assembled for the Dirichlet blow-up threshold.

    C_prime    = (int phi1^(-1/(p-1)))^(1-1/p)
    C_poincare = (b-a)/2, a valid (conservative) L1 Poincare constant
    C_weighted = (sup(phi1) * C_poincare * C_prime)^(-p)
    K          = (2 lambda1 / C_weighted)^(1/(p-1))
    """

    p: float
    lambda1: float
    C_prime: float
    C_poincare: float
    C_weighted: float
    K: float


def constant_chain(p: float, grid: Grid1D) -> ConstantChain:
    """Assemble the full constant chain on a bounded interval for p > 2."""
    if p <= 2.0:
        raise InequalityError("chain valid only for p > 2")
    if grid.layout != "bounded":
        raise InequalityError("bounded grid required")
    L = grid.length
    lam1 = (math.pi / L) ** 2
    # int_a^b sin(pi (x-a)/L)^(-beta) dx = (L/pi) int_0^pi sin^(-beta)
    beta = 1.0 / (p - 1.0)
    base, converged = phi_negative_power_integral(beta)
    if not converged:
        raise InequalityError(f"negative-power integral did not converge (p={p})")
    integral = L / math.pi * base
    c_prime = integral ** (1.0 - 1.0 / p)
    c_poincare = L / 2.0
    c_weighted = (1.0 * c_poincare * c_prime) ** (-p)  # sup phi1 = 1
    K = (2.0 * lam1 / c_weighted) ** (1.0 / (p - 1.0))
    return ConstantChain(
        p=p, lambda1=lam1, C_prime=c_prime, C_poincare=c_poincare,
        C_weighted=c_weighted, K=K,
    )


def randomized_weighted_poincare_test(
    p: float, chain: ConstantChain, trials: int, seed: int,
    grid: Grid1D | None = None, n_modes: int = 24,
) -> CheckResult:
    """Fuzz the weighted Poincare inequality with random sine series.

    Samples v = sum_j c_j sin(j pi (x-a)/L) with c_j ~ N(0,1)/j^2 and
    asserts C_weighted |int v phi1|^p <= int |v'|^p phi1 (1 + 1e-6) on
    every trial. Deterministic given the seed.
    """
    if trials < 1:
        raise InequalityError("trials must be >= 1")
    if grid is None:
        grid = Grid1D(0.0, math.pi, 2048)
    L = grid.length
    x = grid.nodes
    j = np.arange(1, n_modes + 1)
    phi = np.sin(np.pi * (x - grid.a) / L)
    sin_jx = np.sin(np.pi * np.outer(j, x - grid.a) / L)
    cos_jx = np.cos(np.pi * np.outer(j, x - grid.a) / L) * (j[:, None] * np.pi / L)
    h = grid.h
    w = np.ones_like(x)
    w[0] = w[-1] = 0.5  # trapezoid weights

    rng = np.random.default_rng(seed)
    worst = math.inf
    worst_trial = -1
    for trial in range(trials):
        c = rng.standard_normal(n_modes) / j**2
        v = c @ sin_jx
        dv = c @ cos_jx
        lhs = chain.C_weighted * abs(h * np.sum(w * v * phi)) ** p
        rhs = h * np.sum(w * np.abs(dv) ** p * phi)
        margin = rhs * (1.0 + 1e-6) - lhs
        rel = margin / max(rhs, 1e-300)
        if rel < worst:
            worst, worst_trial = rel, trial
    return CheckResult(
        name=f"weighted_poincare_fuzz[p={p},seed={seed}]",
        holds=bool(worst >= 0.0),
        worst_margin=float(worst),
        worst_t=float(worst_trial),
    )
