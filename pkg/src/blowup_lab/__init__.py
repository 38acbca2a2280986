"""Numerical laboratory for boundary-condition-dependent blow-up in 1D model PDEs."""

__version__ = "0.1.0"

from .grids import Eigenpair, Field, Grid1D, first_dirichlet_eigenpair
from .models import ModelSpec
from .operators import BoundaryCondition

__all__ = [
    "BoundaryCondition",
    "Eigenpair",
    "Field",
    "Grid1D",
    "ModelSpec",
    "first_dirichlet_eigenpair",
    "__version__",
]
