"""Loci of commutative DG-rings: cohomology, dualizing modules, CM/Gorenstein/regular loci."""

__version__ = "0.1.0"
