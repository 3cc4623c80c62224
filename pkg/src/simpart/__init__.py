"""simpart: clustering by multilinear score maximization over fuzzy covers."""

__version__ = "0.1.0"
