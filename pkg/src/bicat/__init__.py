"""Finitely presented 2-categories, cones, slices and limit checks."""

from .presentation import (DEFAULT_BOUNDS, LAX, PSEUDO, STRICT, Bounds, OneCellWord,
                           Presentation, TwoCellTerm, compose_one, hcompose,
                           normalize_one_cell, one_cells, vcompose, whisker)
from .closure import equal_two_cells, hom_category, is_invertible, two_cells
from .finite import BOUNDED, EXACT, FAILS, HOLDS, UNKNOWN, FiniteCategory, Verdict
from .dsl import parse_document, parse_presentation

__version__ = "0.1.0"
