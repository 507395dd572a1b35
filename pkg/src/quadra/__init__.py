"""Minimal Gaussian quadrature rules with prescribed nodes.

Given a truncated moment sequence and prescribed real nodes, decide whether a
minimal quadrature rule (optionally with an evaluation-at-infinity atom)
containing those nodes exists, and construct all nodes and weights with
exact-arithmetic certificates."""

from .moments import MomentSequence
from .polynomials import Poly
from .prescribed import (
    PrescribedProblem,
    QuadratureVerdict,
    determinantal_cross_check,
    search_minimal,
    solve,
    solve_prescribed_generalized,
    solve_prescribed_real,
)
from .tmp import INFINITY, Certificate, Measure, TmpVerdict, flat_extension, solve_tmp
from .verify import InstanceSpec, compare, moments_of, random_instance

__all__ = [
    "INFINITY",
    "Certificate",
    "InstanceSpec",
    "Measure",
    "MomentSequence",
    "Poly",
    "PrescribedProblem",
    "QuadratureVerdict",
    "TmpVerdict",
    "compare",
    "determinantal_cross_check",
    "flat_extension",
    "moments_of",
    "random_instance",
    "search_minimal",
    "solve",
    "solve_prescribed_generalized",
    "solve_prescribed_real",
    "solve_tmp",
]

__version__ = "0.1.0"
