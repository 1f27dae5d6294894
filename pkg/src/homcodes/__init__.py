"""Homological quantum codes over qudits: chain complexes, graphs and surfaces."""

__version__ = "0.1.0"
