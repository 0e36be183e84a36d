"""Exact computer algebra for operadic suspension, braces and derived
A-infinity structures.

The package works over the integers throughout.  Elements of graded and
bigraded modules are sparse dictionaries, multilinear maps are tables on
basis words, and every sign convention lives in :mod:`operadic.signs` as
a mod 2 parity so that the different routes to the same operation can be
compared exactly.
"""

__version__ = "0.1.0"
