"""Combinatorial immersed Lagrangian Floer and quilted Floer calculator
for curves on closed oriented surfaces."""

__version__ = "0.1.0"
