"""Information-theoretic measures of hydrogenic, D-dimensional and Klein-Gordon densities."""

__version__ = "0.1.0"
