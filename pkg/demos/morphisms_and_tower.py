"""Morphisms B^c(D_n) -> C, their classifying scalar and the E_1 page.

Run: python3 demos/morphisms_and_tower.py
"""
import json

from opchain.enoperads import commutative_operad
from opchain.homcore import GF, ZZ
from opchain.tower import (CobarGenerators, build_phi, e1_table, homotopy_class, pi_report,
                           postcompose_rescaling, transpose_to_linfinity_morphism)

# The E_1 page: a single class in bidegree (2, 2).
T = e1_table(CobarGenerators(2), commutative_operad(5), 5, ring=ZZ)
print("nonzero E_1 cells:", T.nonzero_cells(), "matches pattern:", T.matches_lemma_pattern())

# φ_c is solved arity by arity; the scalar c is recovered from arity 2.
for c in (0, 1, 3):
    f = build_phi(2, c, 4)
    print(f"c = {c}: residual zero {f.result().passed}, class {homotopy_class(f)}")

# Post-composition with ρ_2 doubles the class.
print("class of ρ_2 ∘ φ_3:", homotopy_class(postcompose_rescaling(build_phi(2, 3, 4), 2)))

# Transposing φ_1 gives ΛL∞ -> Λ^2 E_2 sending the bracket to λ_1.
t = transpose_to_linfinity_morphism(build_phi(2, 1, 3))
print("transpose residual zero:", t.passed, " arity-2 image:", t.arity2_image)

rep = pi_report(2, 4, GF(2))
print(json.dumps({k: rep[k] for k in ("gates", "conclusion", "conditional_on")}, indent=1, ensure_ascii=False))
