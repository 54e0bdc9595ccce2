"""Tropical cubic surfaces: triangulations, lines, motifs and Schlaefli fans."""

__version__ = "0.1.0"
