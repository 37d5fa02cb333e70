"""Exact lattice-point counts on square-discriminant quadrics and the
analytic identities behind their main terms."""

__version__ = "0.1.0"

from ._jit import backend_name

__all__ = ["backend_name", "__version__"]
