"""Arcs in projective Hjelmslev planes over Galois rings."""

from .galois_ring import GaloisRing, RingElement, make_ring, parse_ring
from .plane import PlaneModel, plane_for
from .groups import RingMatrix, condense, condensed_for, orbits, singer_lift
from .search import ArcSolution, BudgetExhausted, SearchProblem, maximize, solve_fixed_n
from .arcs import expand, extend, secant_distribution, verify

__all__ = [
    "GaloisRing", "RingElement", "make_ring", "parse_ring",
    "PlaneModel", "plane_for",
    "RingMatrix", "condense", "condensed_for", "orbits", "singer_lift",
    "ArcSolution", "BudgetExhausted", "SearchProblem", "maximize", "solve_fixed_n",
    "expand", "extend", "secant_distribution", "verify",
]
