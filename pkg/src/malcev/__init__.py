"""Exact-arithmetic computations with nilpotent Lie algebras: Hall bases,
the Campbell-Baker-Hausdorff group law, Chevalley-Eilenberg complexes,
Maurer-Cartan deformation theory, Massey products, and quadratic
presentations, together with the representation-lifting obstructions they
support."""

from .lie import LieAlgebra, LieIdeal, heisenberg, abelian
from .freelie import hall_basis, free_nilpotent
from .bch import bch, SemidirectElement, GroupPresentation
from .dga import FiniteDGA, chevalley_eilenberg, cohomology, massey_triple
from .dgla import tensor_dgla, mc_solve, gauge, gauge_equivalent
from .present import (
    QuadraticPresentation, CupDatum, realize, is_quadratically_presented,
    malcev_model,
)

__all__ = [
    "LieAlgebra", "LieIdeal", "heisenberg", "abelian",
    "hall_basis", "free_nilpotent",
    "bch", "SemidirectElement", "GroupPresentation",
    "FiniteDGA", "chevalley_eilenberg", "cohomology", "massey_triple",
    "tensor_dgla", "mc_solve", "gauge", "gauge_equivalent",
    "QuadraticPresentation", "CupDatum", "realize",
    "is_quadratically_presented", "malcev_model",
]
