"""Grids, fields, quadrature, norms, and the first Dirichlet eigenpair.

Everything downstream (operators, models, monitors) measures with the
tools defined here.  Bounded grids store both endpoints so that
Dirichlet-type conditions are direct node assignments; periodic grids
omit the right endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GridError(ValueError):
    pass


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid on (a, b).

    layout='periodic' stores n nodes x_j = a + j*h, j = 0..n-1;
    layout='bounded' stores n+1 nodes with both endpoints included.
    In both cases h = (b - a)/n.
    """

    a: float
    b: float
    n: int
    layout: str = "bounded"

    def __post_init__(self):
        if self.b <= self.a:
            raise GridError(f"need b > a, got ({self.a}, {self.b})")
        if self.n < 2:
            raise GridError(f"need n >= 2, got {self.n}")
        if self.layout not in ("periodic", "bounded"):
            raise GridError(f"unknown layout {self.layout!r}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def num_nodes(self) -> int:
        return self.n if self.layout == "periodic" else self.n + 1

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.num_nodes)

    @property
    def length(self) -> float:
        return self.b - self.a

    def refine(self) -> "Grid1D":
        """Same interval at doubled resolution."""
        return Grid1D(self.a, self.b, 2 * self.n, self.layout)


@dataclass(frozen=True)
class Field:
    """Samples of a real function on a Grid1D.

    Values must be finite unless the field is explicitly flagged as
    post-blow-up diagnostic output.
    """

    grid: Grid1D
    values: np.ndarray
    allow_nonfinite: bool = field(default=False, compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.grid.num_nodes,):
            raise FieldError(
                f"value count {vals.shape} does not match grid "
                f"node count {self.grid.num_nodes}"
            )
        if not self.allow_nonfinite and not np.all(np.isfinite(vals)):
            raise FieldError("non-finite field")

    @classmethod
    def from_function(cls, grid: Grid1D, fn) -> "Field":
        return cls(grid, fn(grid.nodes))

    def with_values(self, values: np.ndarray, allow_nonfinite: bool = False) -> "Field":
        return Field(self.grid, values, allow_nonfinite=allow_nonfinite)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class Eigenpair:
    """First Dirichlet eigenpair of -d^2/dx^2 on a bounded interval."""

    lambda1: float
    phi1: Field


def _check_same_grid(f: Field, w: Field):
    if f.grid != w.grid:
        raise FieldError("fields live on different grids")


def quadrature(f: Field) -> float:
    """Composite trapezoid approximation of the integral of f over (a, b).

    On periodic layouts this is the rectangle rule (trapezoid with the
    wrap-around node identified), spectrally accurate for smooth
    periodic integrands.
    """
    vals = f.values
    if not np.all(np.isfinite(vals)):
        raise FieldError("non-finite field")
    h = f.grid.h
    if f.grid.layout == "periodic":
        return float(h * np.sum(vals))
    return float(h * (np.sum(vals) - 0.5 * (vals[0] + vals[-1])))


def norm(f: Field, kind: str = "L2", p: float | None = None) -> float:
    """Quadrature-based norm. kind in {'L1', 'L2', 'Lp', 'sup'}."""
    if kind == "sup":
        return f.sup()
    if kind == "L1":
        p = 1.0
    elif kind == "L2":
        p = 2.0
    elif kind == "Lp":
        if p is None or p < 1:
            raise FieldError("invalid exponent")
    else:
        raise FieldError(f"unknown norm kind {kind!r}")
    integ = quadrature(f.with_values(np.abs(f.values) ** p))
    return float(integ ** (1.0 / p))


def weighted_pairing(f: Field, w: Field) -> float:
    """quadrature(f * w); f and w must share a grid."""
    _check_same_grid(f, w)
    return quadrature(f.with_values(f.values * w.values))


def first_dirichlet_eigenpair(g: Grid1D) -> Eigenpair:
    """Exact analytic first Dirichlet eigenpair sampled on g.

    Normalized so that sup phi1 = 1:
    lambda1 = (pi/(b-a))^2, phi1(x) = sin(pi (x-a)/(b-a)).
    """
    if g.layout != "bounded":
        raise GridError("eigenpair defined for bounded domains")
    L = g.length
    lam1 = (np.pi / L) ** 2
    phi = np.sin(np.pi * (g.nodes - g.a) / L)
    # endpoints are exact zeros of the eigenfunction
    phi[0] = 0.0
    phi[-1] = 0.0
    return Eigenpair(lambda1=float(lam1), phi1=Field(g, phi))
