"""
hypwave - Spherical harmonic analysis and wave propagators on rank-one symmetric spaces
"""

__version__ = '0.1.0'

SCHEMA_VERSION = 1
