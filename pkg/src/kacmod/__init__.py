"""Exact and numerical engine for the twisted affine root system BC_l^(2):
Weyl-Kac characters, theta series, denominator identities and the SL2(Z)
transformation laws of the (twisted) characters."""

__version__ = "0.1.0"
