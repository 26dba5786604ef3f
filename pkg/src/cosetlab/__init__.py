"""Exact experiments on coset spaces G/H of countable groups."""

__version__ = "0.1.0"
