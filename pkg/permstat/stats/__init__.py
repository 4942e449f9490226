"""
q-statistics, covering maps and dashed patterns.
"""
