"""A tour of the E_n suboperads of the Barratt–Eccles operad.

Run: python3 demos/en_operads_tour.py
"""
from opchain.enoperads import canonical_generators, complexity, en_operad
from opchain.homcore import GF, homology
from opchain.operadcore import check_operad
from opchain.sigmaobj import coinvariants

# Basis elements are tuples of permutations with distinct neighbours; E_n keeps
# those in which no pair of letters changes order more than n-1 times.
t = ((1, 2, 3), (2, 1, 3), (1, 2, 3))
print("complexity of", t, "=", complexity(t))

for n in (1, 2, 3):
    E = en_operad(n, 3)
    dims = {d: E.underlying.component(3).dim(d) for d in E.underlying.component(3).degrees}
    print(f"E_{n}(3) cell counts by degree: {dims}")
    print(f"  H_*(E_{n}(3)) =", homology(E.underlying.component(3).complex))

# The axioms are checked exhaustively on basis elements.
report = check_operad(en_operad(2, 4), 4)
for line in report.lines():
    print(line)

# λ_1 in E_2(2) is the loop (12, 21) + (21, 12); its class generates H_1.
print("λ_1 =", canonical_generators(2)["lambda"])

# Coinvariants: E_2(s)_Σ computes the homology of the braid group B_s.
E2 = en_operad(2).underlying
for s in (2, 3, 4):
    print(f"H_*(B_{s}) =", homology(coinvariants(E2, s)))
print("H_*(E_3(2)_Σ; F_2) =", homology(coinvariants(en_operad(3).underlying, 2), ring=GF(2)))
