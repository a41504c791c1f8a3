"""
chowcheck - Backend Package

Group action, operators, numerics, cycles, rank certificates and the
check registry.
"""

__version__ = "0.1.0"
