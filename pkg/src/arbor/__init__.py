"""Exact computations in Hopf algebras of colored rooted trees."""

from .coefficients import MPoly, Params
from .hopf import HopfContext
from .lincomb import LinComb, Tensor
from .trees import Forest, RigidTree, parse, parse_key

__all__ = ["MPoly", "Params", "HopfContext", "LinComb", "Tensor", "Forest", "RigidTree", "parse", "parse_key"]
__version__ = "0.1.0"
