"""Finite-state transducers, two-tape automata and bounded-trailing determinization."""

__version__ = "0.1.0"
