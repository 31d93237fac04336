"""Royal and strong royal edge colorings: exact search, constructions, verification."""

__version__ = "0.1.0"
