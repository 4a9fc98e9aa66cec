"""Exact rings, sparse matrices, Smith normal form and based chain complexes."""
from .rings import CoefficientRing, ZZ, QQ, GF
from .sparse import SparseMatrix
from .snf import (smith_normal_form, invariant_factors, solve_linear, determinant,
                  matmul, rank, kernel_basis)
from .complex import (BasedComplex, GradedSummary, NotAComplex, homology, shift, dual,
                      tensor, hom_complex, direct_sum, chain_map_residual, homology_class,
                      label_to_json, label_from_json)

__all__ = [
    "CoefficientRing", "ZZ", "QQ", "GF", "SparseMatrix", "smith_normal_form",
    "invariant_factors", "solve_linear", "determinant", "matmul", "rank", "kernel_basis",
    "BasedComplex", "GradedSummary", "NotAComplex", "homology", "shift", "dual", "tensor",
    "hom_complex", "direct_sum", "chain_map_residual", "homology_class",
    "label_to_json", "label_from_json",
]
