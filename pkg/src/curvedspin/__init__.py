"""Spin entanglement of particle pairs moving on circular orbits in Schwarzschild spacetime."""

__version__ = "0.1.0"
