"""
numscale: scaled numbers, alphabet numerals and a complex scaling field
for one-dimensional quantum mechanics
"""

__version__ = "0.1.0"
