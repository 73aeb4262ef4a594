"""Exact statistics of fixed spaces and regular semisimple elements in
finite classical groups: truncated-series generating functions, Weyl-group
cycle statistics, brute-force small-group oracles, and a reporting CLI."""

__version__ = "0.1.0"
