"""Exact Sen-operator and de Rham tower computations over Q, Q[x] and Q[x]/(f)."""

__version__ = "0.1.0"
