"""Riesz external-field equilibria and Fekete points on spheres."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, NoSolutionError, NumericError, RieszParameter

__all__ = [name for name in dir() if not name.startswith("_")]
