"""cdcat: exact symbolic calculus for cartesian differential categories."""

__version__ = "0.1.0"
