"""Coxeter systems, Davis-complex ruins, coset colorings, exact homology,
and an exhaustive finite-instance verification harness."""

from .errors import (CoxruinsError, ExplosionGuard, FaceAbsent, InvalidMatrix,
                     NotClosed, NotEven, NotFlag, ParseError, TruncationUnsafe,
                     TypeMismatch, WordTooLong)
from .homology import BettiTable, ChainComplex, rank_sparse, simplicial_homology
from .kernel import BACKEND
from .nerve import SimplicialComplex, build_nerve, is_flag, link, sphere_check
from .system import (CoxeterMatrix, GeneratorProjection, SphericalPoset,
                     chi_orb, is_spherical, matrix_from_rows, parse_system,
                     spherical_info, spherical_poset)
from .words import Ball, WordEngine, enumerate_ball

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Ball",
    "BettiTable",
    "ChainComplex",
    "CoxeterMatrix",
    "CoxruinsError",
    "ExplosionGuard",
    "FaceAbsent",
    "GeneratorProjection",
    "InvalidMatrix",
    "NotClosed",
    "NotEven",
    "NotFlag",
    "ParseError",
    "SimplicialComplex",
    "SphericalPoset",
    "TruncationUnsafe",
    "TypeMismatch",
    "WordEngine",
    "WordTooLong",
    "build_nerve",
    "chi_orb",
    "enumerate_ball",
    "is_flag",
    "is_spherical",
    "link",
    "matrix_from_rows",
    "parse_system",
    "rank_sparse",
    "simplicial_homology",
    "spherical_info",
    "spherical_poset",
    "sphere_check",
]
