"""Computing in the space of marked groups."""

__version__ = "0.1.0"
