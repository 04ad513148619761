"""Exact and certified computations around the Gaussian-integer Diophantine triple {k-1, k+1, 16k^3-4k}."""

from .gint import GaussianInt, gi, gi_abs, gi_arith, gi_divides, gi_divrem, gi_mod, gi_sqrt
from .pell import PellEquation, enumerate_fundamental, intersect_sequences, step_solution
from .reports import Report
from .sieve import candidate_fundamentals, congruence_profiles
from .tuples import extend_search, family_triple, verify_tuple

__all__ = ["GaussianInt", "gi", "gi_abs", "gi_arith", "gi_divides", "gi_divrem", "gi_mod",
           "gi_sqrt", "PellEquation", "Report", "candidate_fundamentals", "congruence_profiles",
           "enumerate_fundamental", "extend_search", "family_triple", "intersect_sequences",
           "step_solution", "verify_tuple"]
