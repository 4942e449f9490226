"""
HTTP routes for permstat.
"""
