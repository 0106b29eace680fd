"""String-diagram calculus for the Heisenberg category and its semisimple part."""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
