"""Membership tests, transforms, and property suites for the normaloid
hierarchy of square complex matrices."""

__version__ = "0.1.0"
