"""Two-boundary quantum dynamics simulator."""

__version__ = "0.1.0"
