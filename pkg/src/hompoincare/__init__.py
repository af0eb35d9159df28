"""Poincare series of spaces of commuting elements in compact Lie groups."""

from .exactalg import Poly, RatFn
from .poincare import compute, series_formula, series_oracle
from .weylgroups import BudgetExceeded, Family, GroupSpec

__version__ = "0.1.0"

__all__ = ["Poly", "RatFn", "compute", "series_formula", "series_oracle",
           "BudgetExceeded", "Family", "GroupSpec"]
