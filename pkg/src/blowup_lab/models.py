"""The five PDE families as right-hand sides with IMEX splittings.

Each family exposes the full right-hand side and a stiff/nonstiff
splitting (stiff = the linear dissipative part, treated implicitly).
Exact-solution oracles (Cole-Hopf for the p = 2 gradient equation,
spectral heat solutions) live here as well.

Families:
    VHJ                  u_t = u_xx + |u_x|^p
    KSIntegrated         u_t = -u_xxxx - u_xx - (1/2)(u_x)^2
    KSDifferentiated     v_t = -v_xxxx - v_xx - v v_x
    ViscousBurgers       u_t = nu u_xx - u u_x
    HyperviscousBurgers  u_t = -kappa (-Lap)^alpha u + nu u_xx - u u_x
    RiccatiHeat          w_t = nu w_xx - w^2
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np
import scipy.fft

from .grids import Field, Grid1D
from .operators import (
    BoundaryCondition,
    LinearOperator,
    OperatorError,
    check_compatible,
    derivative,
    diff_operator,
    fractional_laplacian,
    _wavenumbers,
)

_ALLOWED_BCS = {
    "VHJ": {BoundaryCondition.Periodic, BoundaryCondition.Dirichlet},
    "KSIntegrated": {
        BoundaryCondition.Periodic,
        BoundaryCondition.NeumannKS,
        BoundaryCondition.PokhozhaevKS,
    },
    "KSDifferentiated": {BoundaryCondition.Periodic},
    "ViscousBurgers": {BoundaryCondition.Periodic, BoundaryCondition.Neumann},
    "HyperviscousBurgers": {BoundaryCondition.Periodic},
    "RiccatiHeat": {BoundaryCondition.Dirichlet},
}


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    """One PDE family with its parameters and boundary condition."""

    family: str
    bc: BoundaryCondition
    nu: float = 0.0
    p: float = 4.0       # VHJ gradient exponent
    kappa: float = 0.0   # hyperviscosity strength
    alpha: float = 2.0   # hyperviscosity order, > 1
    dealias: bool = False

    def __post_init__(self):
        if self.family not in _ALLOWED_BCS:
            raise ModelError(f"unknown family {self.family!r}")
        if self.bc not in _ALLOWED_BCS[self.family]:
            raise ModelError(f"{self.family} does not admit bc={self.bc.value}")
        if self.family in ("ViscousBurgers", "RiccatiHeat") and self.nu <= 0:
            raise ModelError(f"{self.family} requires nu > 0")
        if self.family == "HyperviscousBurgers":
            if self.kappa <= 0:
                raise ModelError("HyperviscousBurgers requires kappa > 0")
            if self.alpha <= 1:
                raise ModelError("HyperviscousBurgers requires alpha > 1")
        if self.family == "VHJ" and self.p < 0:
            raise ModelError("VHJ requires p >= 0")


@dataclass(frozen=True)
class SplitRHS:
    stiff: LinearOperator
    nonstiff: Callable[[Field], Field]


def _dealias_23(f: Field) -> Field:
    """2/3-rule truncation of a periodic field."""
    fh = np.fft.rfft(f.values)
    kmax = len(fh) - 1
    cut = int(np.floor(2 * kmax / 3))
    fh[cut + 1 :] = 0.0
    return f.with_values(np.fft.irfft(fh, n=f.grid.n))


def _grad(spec: ModelSpec, u: Field) -> Field:
    return derivative(u, 1, spec.bc)


def _nonstiff(spec: ModelSpec, u: Field) -> Field:
    fam = spec.family
    if fam == "VHJ":
        ux = _grad(spec, u).values
        out = np.abs(ux) ** spec.p
    elif fam == "KSIntegrated":
        # sign convention chosen so the mean obeys d/dt int u = +(1/2)||u_x||^2
        # under the third-order blow-up BCs (the two conventions swap under
        # u -> -u and carry identical regularity theory)
        ux = _grad(spec, u).values
        out = 0.5 * ux**2
    elif fam in ("KSDifferentiated", "ViscousBurgers", "HyperviscousBurgers"):
        ux = _grad(spec, u).values
        out = -u.values * ux
    elif fam == "RiccatiHeat":
        out = -u.values ** 2
    else:  # pragma: no cover
        raise ModelError(fam)
    g = u.with_values(out)
    if spec.dealias and spec.bc.is_periodic:
        g = _dealias_23(g)
    return g


def _stiff_operator(spec: ModelSpec, bc: BoundaryCondition) -> LinearOperator:
    fam = spec.family
    if fam == "VHJ":
        return diff_operator(2, bc)
    if fam in ("KSIntegrated", "KSDifferentiated"):
        def action(f: Field) -> Field:
            return f.with_values(
                -derivative(f, 4, bc).values - derivative(f, 2, bc).values
            )
        sym = (lambda k: k**2 - k**4) if bc.is_periodic else None
        return LinearOperator(action, bc, matrix_bandwidth=4, symbol=sym)
    if fam in ("ViscousBurgers", "RiccatiHeat"):
        return diff_operator(2, bc, coeff=spec.nu)
    if fam == "HyperviscousBurgers":
        def action(f: Field) -> Field:
            return f.with_values(
                -fractional_laplacian(f, spec.alpha, spec.kappa).values
                + spec.nu * derivative(f, 2, bc).values
            )
        def sym(k):
            return -spec.kappa * np.abs(k) ** (2.0 * spec.alpha) - spec.nu * k**2
        return LinearOperator(action, bc, matrix_bandwidth=4, symbol=sym)
    raise ModelError(fam)  # pragma: no cover


# splittings are cached per spec so implicit factorizations are reused
_SPLIT_CACHE: dict[ModelSpec, SplitRHS] = {}


def split(spec: ModelSpec) -> SplitRHS:
    """Stiff linear dissipative part plus the explicit remainder."""
    s = _SPLIT_CACHE.get(spec)
    if s is None:
        s = SplitRHS(
            stiff=_stiff_operator(spec, spec.bc),
            nonstiff=lambda u: _nonstiff(spec, u),
        )
        _SPLIT_CACHE[spec] = s
    return s


def rhs(spec: ModelSpec, u: Field) -> Field:
    """Full right-hand side, BC-aware."""
    check_compatible(u.grid, spec.bc)
    s = split(spec)
    return u.with_values(s.stiff(u).values + s.nonstiff(u).values)


# ---------------------------------------------------------------------------
# exact-solution oracles
# ---------------------------------------------------------------------------

def heat_exact(u0: Field, t: float, nu: float, bc: BoundaryCondition) -> Field:
    """Spectral solution of u_t = nu u_xx from u0 under bc at time t."""
    if t < 0 or nu <= 0:
        raise ModelError("heat_exact needs t >= 0 and nu > 0")
    grid = u0.grid
    L = grid.length
    if bc is BoundaryCondition.Periodic:
        check_compatible(grid, bc)
        k = _wavenumbers(grid)
        uh = np.fft.rfft(u0.values) * np.exp(-nu * k**2 * t)
        return u0.with_values(np.fft.irfft(uh, n=grid.n))
    if bc is BoundaryCondition.Dirichlet:
        check_compatible(grid, bc)
        # DST-I on interior nodes: modes sin(j pi (x-a)/L)
        inner = u0.values[1:-1]
        j = np.arange(1, len(inner) + 1)
        coeffs = scipy.fft.dst(inner, type=1) * np.exp(-nu * (j * np.pi / L) ** 2 * t)
        out = np.zeros_like(u0.values)
        out[1:-1] = scipy.fft.idst(coeffs, type=1)
        return u0.with_values(out)
    if bc is BoundaryCondition.Neumann:
        check_compatible(grid, bc)
        # DCT-I on all nodes: modes cos(j pi (x-a)/L)
        j = np.arange(grid.num_nodes)
        coeffs = scipy.fft.dct(u0.values, type=1) * np.exp(-nu * (j * np.pi / L) ** 2 * t)
        return u0.with_values(scipy.fft.idct(coeffs, type=1))
    raise ModelError(f"heat_exact unsupported for bc={bc.value}")


def cole_hopf_exact(u0: Field, t: float, bc: BoundaryCondition) -> Field:
    """Exact VHJ p = 2 solution: u(t) = log v(t), v_t = v_xx, v0 = e^{u0}.

    Dirichlet case evolves v - 1 in the sine basis (v = 1 on the
    boundary since u0 vanishes there).
    """
    if bc not in (BoundaryCondition.Periodic, BoundaryCondition.Dirichlet):
        raise ModelError("Cole-Hopf oracle defined for Periodic or Dirichlet")
    with np.errstate(over="ignore"):
        v0 = np.exp(u0.values)
    if np.any(v0 <= 0.0) or np.any(~np.isfinite(v0)):
        raise ModelError("transform underflow")
    if bc is BoundaryCondition.Periodic:
        v = heat_exact(u0.with_values(v0), t, 1.0, bc).values
    else:
        w = heat_exact(u0.with_values(v0 - 1.0), t, 1.0, bc).values
        v = 1.0 + w
        v[0] = 1.0
        v[-1] = 1.0
    if np.any(v <= 0.0):
        raise ModelError("transform underflow")
    return u0.with_values(np.log(v))
