"""Exact desk-scale simulation of photonic quantum computing primitives."""

__version__ = "0.1.0"
