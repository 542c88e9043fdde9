"""Exact arithmetic and polynomial system solving."""

from .groebner import BudgetExceeded, GroebnerBasis, buchberger, dimension
from .multipoly import MultiPoly
from .numberfield import AlgElem, NumberField
from .realroots import AlgNum, Interval, sturm_isolate
from .scalars import FieldError, Surd, mpq, surd
from .solve import DimensionError, SolverError, SystemSolution, solve_system, solve_zero_dim
from .unipoly import RatFunc, UniPoly

__all__ = [
    "AlgElem", "AlgNum", "BudgetExceeded", "DimensionError", "FieldError", "GroebnerBasis",
    "Interval", "MultiPoly", "NumberField", "RatFunc", "SolverError", "Surd", "SystemSolution",
    "UniPoly", "buchberger", "dimension", "mpq", "solve_system", "solve_zero_dim",
    "sturm_isolate", "surd",
]
