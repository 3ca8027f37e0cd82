"""Exact cone computations for G-zips: root data, polyhedral cones, zip cones,
separating systems and the shipped cases."""

__version__ = "0.1.0"
