"""Exact invertibility and non-degeneracy checks for finite braided tensor
categories, presented either as quasitriangular Hopf algebras or as
semisimple modular data."""

__version__ = "0.1.0"
