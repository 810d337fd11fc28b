"""Minimal cellular resolutions for all powers of path edge ideals."""

from .betti import BettiTable, betti_table, closed_form_betti
from .errors import GuardError, MatchingError, NotAComplexError
from .ideals import Graph, GeneratorSet, Monomial, edge_ideal_gens, lcm_of, power_gens
from .morse import Matching, assemble_matching, morse_boundary
from .staircase import StaircaseComplex, enumerate_cells

__all__ = [
    "BettiTable",
    "Graph",
    "GeneratorSet",
    "GuardError",
    "Matching",
    "MatchingError",
    "Monomial",
    "NotAComplexError",
    "StaircaseComplex",
    "assemble_matching",
    "betti_table",
    "closed_form_betti",
    "edge_ideal_gens",
    "enumerate_cells",
    "lcm_of",
    "morse_boundary",
    "power_gens",
]
