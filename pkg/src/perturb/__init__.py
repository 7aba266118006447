"""Orientation, density-certification, and containment experiments for
randomly perturbed graphs."""

from .backend import BACKEND

__all__ = ["BACKEND", "__version__"]
__version__ = "0.1.0"
