"""Exact chain-level operad computations: Barratt–Eccles E_n operads, cobar constructions and mapping-space towers."""
__version__ = "0.1.0"
