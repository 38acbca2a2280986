"""Publication-style figures from blow-up laboratory reports.

Consumes only the runner's serialized artifacts (one JSON report plus
`t,<name>` CSV series per run); never links against the solver.
"""

__version__ = "0.1.0"

from .render import FigureSpec, PlotError, render

__all__ = ["FigureSpec", "PlotError", "render", "__version__"]
