"""Projective torsion intersections of elliptic-curve pairs, computed exactly."""
__version__ = "0.1.0"
