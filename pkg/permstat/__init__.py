"""
Exact q-statistics on symmetric and alternating groups.
"""

__version__ = "0.1.0"
