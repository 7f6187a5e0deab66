"""Green's functions and solvers for first-order equations with reflection or involution."""

from ._involute import *  # noqa: F401,F403
from ._involute import InvoluteError, Expr, Kernel  # noqa: F401

__version__ = "0.1.0"
