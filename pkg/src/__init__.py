"""Pseudospectral nonlinear Klein-Gordon scattering and verification lab."""

__version__ = "0.1.0"
