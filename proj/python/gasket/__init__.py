"""Functions on the Sierpinski gasket: addresses, extension, energy,
variation and box-counting dimension."""

from ._core import *  # noqa: F401,F403
from ._core import GasketError, Function, DIM

__all__ = [name for name in dir() if not name.startswith("_")]
