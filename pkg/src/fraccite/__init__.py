"""Fractional citation counting and post-hoc comparison of research units."""

from .errors import FracciteError

__version__ = "0.1.0"

__all__ = ["FracciteError", "__version__"]
