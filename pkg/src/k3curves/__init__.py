"""Exact-arithmetic toolkit for rational-curve configurations on K3 surfaces.

Submodules:
    exact     -- integer/rational lattice linear algebra
    forms     -- discriminant (finite quadratic) forms
    graphs    -- configuration graphs and their polarized Fano lattices
    geometry  -- admissibility / subgeometric / geometric decision engine
    census    -- maximal curve counts, periods, residue-class census
"""

from . import exact, forms, graphs, geometry, census

__all__ = ["exact", "forms", "graphs", "geometry", "census"]
__version__ = "0.1.0"
