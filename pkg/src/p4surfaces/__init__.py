"""Exact computational algebra for smooth non-general-type surfaces in P^4."""

from .rings import PolyRing, Polynomial, MonomialOrder, parse_poly, format_poly

__all__ = ["PolyRing", "Polynomial", "MonomialOrder", "parse_poly", "format_poly"]

__version__ = "0.1.0"
