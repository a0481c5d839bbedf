"""Exact arithmetic of Pell-controlled invariants for polarized hyperkahler
manifolds of K3^[m]-type: cone slopes and chamber walls, biregular and
birational automorphism groups, Heegner-divisor components, and the excluded
lists of the period-map image."""

from . import arith, autgroups, cones, lattice, pell, periods, rrinv

__all__ = ["arith", "autgroups", "cones", "lattice", "pell", "periods", "rrinv"]
__version__ = "0.1.0"
