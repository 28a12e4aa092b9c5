"""Exact-arithmetic workbench for square sequences with constant second
difference, the quadric surfaces attached to them, p-adic value
distribution of rational functions, and the reduction of Diophantine
systems to diagonal quadratic form."""

__version__ = "0.1.0"

from . import exact, nevanlinna, reduction, sequences, surfaces, symbolic

__all__ = ["exact", "nevanlinna", "reduction", "sequences", "surfaces",
           "symbolic", "__version__"]
