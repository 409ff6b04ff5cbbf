"""Exact computation of the Sklyanin determinant of the reflection algebra B(n, l)."""

__version__ = "0.1.0"
