"""Primitive nondeficient numbers: enumeration, reciprocal sums, explicit bounds."""

__version__ = "0.1.0"
