"""Simulation and pseudo-likelihood inference for nearest-neighbour Gibbs
point processes on beta-Delaunay graphs."""

__version__ = "0.1.0"
