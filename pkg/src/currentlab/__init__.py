"""currentlab: numerical laboratory for current-algebra central extensions,
truncated Fock-space representations, and Riemann-surface period data."""

__version__ = "0.1.0"
