"""Base categories: finite sets, finite modules over Z/m and roses."""

from .base import BaseInstance, Cooperation, Copower
from .finmod import FinMod, FinModMap, FinModObj
from .finset import FinSet, FinSetMap
from .rose import Rose, RoseMap

__all__ = [
    "BaseInstance", "Cooperation", "Copower",
    "FinSet", "FinSetMap", "FinMod", "FinModObj", "FinModMap", "Rose", "RoseMap",
]
