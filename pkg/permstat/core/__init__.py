"""
Group layer: permutations, canonical words and the alternating group.
"""
