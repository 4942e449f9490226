"""
Services: exact numbers, polynomials, sharded sweeps, distributions and verification.
"""
