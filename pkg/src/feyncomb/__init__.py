"""feyncomb: exact graph polynomials of quantum field theory.

Tutte and Bollobas-Riordan polynomial families, Symanzik and Moyal-space
parametric polynomials, and the Connes-Kreimer Hopf-algebra renormalization
combinatorics, all over exact rational arithmetic, with every quantity
computed by at least two independent routes.
"""

from .graphs import Edge, EdgeSubset, Graph, Leg, TwoTree
from .poly import MultiPoly
from .ribbon import Face, RibbonGraph, load_fixture

__all__ = [
    "Edge",
    "EdgeSubset",
    "Face",
    "Graph",
    "Leg",
    "MultiPoly",
    "RibbonGraph",
    "TwoTree",
    "load_fixture",
]

__version__ = "0.1.0"
