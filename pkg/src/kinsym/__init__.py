"""Kinematical symmetries of 3D incompressible flows: a symbolic-numeric checker."""

__version__ = "0.1.0"
