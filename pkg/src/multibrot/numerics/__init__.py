"""Double-precision dynamics of z -> z^d + c."""
from .config import NumericsConfig
from .kernels import BACKEND

__all__ = ["NumericsConfig", "BACKEND"]
