"""Exact verification and construction of Hom-associative and Hom-Lie (co/bi)algebras."""

__version__ = "0.1.0"
