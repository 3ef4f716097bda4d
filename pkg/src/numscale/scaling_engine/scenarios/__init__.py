"""
Scenario implementations. Every module here is discovered by the
registry; files starting with an underscore hold shared helpers.
"""
