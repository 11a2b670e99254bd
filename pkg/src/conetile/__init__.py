"""Exact tools for translation tilings of convex polyhedral cones."""
__version__ = "0.1.0"
