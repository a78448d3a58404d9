"""Bigraded double homology of moment-angle complexes."""
from __future__ import annotations

from .bigraded import BigradedTable, compute_double_homology, hh_table, hh_total_rank, hochster_table
from .complex import SimplicialComplex
from .errors import CapExceededError, ComplexError, HHCalcError
from .linalg import FieldSpec

__all__ = [
    "BigradedTable",
    "CapExceededError",
    "ComplexError",
    "FieldSpec",
    "HHCalcError",
    "SimplicialComplex",
    "compute_double_homology",
    "hh_table",
    "hh_total_rank",
    "hochster_table",
]

__version__ = "0.1.0"
