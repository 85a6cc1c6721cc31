"""Vertex connectivity of 1-plane graphs without x-crossings."""

__version__ = "0.1.0"
