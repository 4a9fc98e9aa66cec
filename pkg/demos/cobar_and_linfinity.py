"""Cobar constructions of the dual cooperads Λ^{-n} E_n^∨ and the L∞ operad.

Run: python3 demos/cobar_and_linfinity.py
"""
import math

from opchain.homcore import QQ, homology
from opchain.enoperads import en_operad
from opchain.koszul import cobar_en, cobar_homology, linfinity, verify_cobar

L = linfinity(5, QQ)
for line in verify_cobar(L).lines():
    print(line)
for r in range(2, 6):
    h = cobar_homology(L, r, QQ)
    print(f"H_*(L∞({r})) = {h}   (r-1)! = {math.factorial(r - 1)}")

# B^c(D_2) is a cofibrant model of E_2: same homology arity by arity.
P = cobar_en(2, 4)
E = en_operad(2).underlying
for r in range(2, 5):
    print(f"arity {r}: cobar {cobar_homology(P, r)}  E_2 {homology(E.component(r).complex)}")

# θ on an arity-3 generator is a sum of two-vertex trees (top-degree ones have none).
x = max(P.generator_labels(3), key=lambda y: len(P.theta(3, y)))
print("θ of", x, "=")
for tree, c in sorted(P.theta(3, x).items(), key=repr):
    print(f"  {c:+d} {tree}")
