"""Dually affine spaces modelled by a coalgebra in a base category.

The engine works over three exactly representable base categories: finite
sets, finite modules over ``Z/m`` and roses (wedges of circles, modelled by
free groups).  See :mod:`dualaffine.affine`, :mod:`dualaffine.zariski` and
:mod:`dualaffine.completeness` for the constructions.
"""

from .errors import CapabilityError, DomainError, DualAffineError

__version__ = "0.1.0"

__all__ = ["CapabilityError", "DomainError", "DualAffineError", "__version__"]
