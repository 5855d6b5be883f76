"""Minimal degrees, generalized cascades and quasi-homogeneity certificates for G/P."""

from .rootsys import DynkinSpec, RootSystem, build_root_system
from .degree import Context, context

__all__ = ["DynkinSpec", "RootSystem", "build_root_system", "Context", "context"]
__version__ = "0.1.0"
