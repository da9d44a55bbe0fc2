"""Exact Galois group classification and exhaustive censuses for monic
integer cubics and quartics, with the Eisenstein parametrization, identity
verification suites, lower-bound construction families, and reducible-count
asymptotics built on the same exact-arithmetic core."""

__version__ = "0.1.0"
