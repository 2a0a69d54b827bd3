"""Equations, invariants and equilibria for conditional-independence equilibria of finite games."""

__version__ = "0.1.0"
