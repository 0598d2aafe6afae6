"""Analytics engine for European wind capacity-factor variability."""

__version__ = "0.1.0"
