"""Exact computations with unitarily invariant area measures.

Layers, bottom up:

* :mod:`hermarea.scalars` - numbers in Q[pi, 1/pi]
* :mod:`hermarea.poly` - graded polynomials in (s, t) or (t, u) and the f/p/q families
* :mod:`hermarea.valalg` - the algebra of unitarily invariant valuations
* :mod:`hermarea.areamod` - area measures as a module over it
* :mod:`hermarea.forms` - independent check of the t_hat action via invariant forms
* :mod:`hermarea.checks`, :mod:`hermarea.cli` - named identity checks and the command line
"""

from .areamod import (
    AreaMeasure,
    AreaModule,
    B,
    Gamma,
    area_basis,
    area_module,
    delta_measure,
    dim_area,
    null_measure,
)
from .poly import Coords, GradedPoly, fu_f, poly_p, poly_q
from .scalars import PI, PiScalar, omega
from .valalg import ValAlgebra, Valuation, algebra, dim_val, mu, mu_basis

__version__ = "0.1.0"

__all__ = [
    "AreaMeasure",
    "AreaModule",
    "B",
    "Gamma",
    "area_basis",
    "area_module",
    "delta_measure",
    "dim_area",
    "null_measure",
    "Coords",
    "GradedPoly",
    "fu_f",
    "poly_p",
    "poly_q",
    "PI",
    "PiScalar",
    "omega",
    "ValAlgebra",
    "Valuation",
    "algebra",
    "dim_val",
    "mu",
    "mu_basis",
]
