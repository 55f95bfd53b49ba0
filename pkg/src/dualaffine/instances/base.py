"""The contract shared by the base categories.

An instance fixes a distinguished object ``S`` together with cooperations
``omega: S -> n * S``, one for each operation of the bound theory.  For any
object ``X`` the points ``hom(S, X)`` then carry the induced operations

    omega_X(a_0, ..., a_{n-1}) = [a_0, ..., a_{n-1}] . omega

which :meth:`BaseInstance.induced` computes literally from composition and
cotupling.  Subclasses supply the category; they may also override
:meth:`apply_point` with a faster native formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from ..errors import CapabilityError, DomainError
from ..theory import TAlgebra, TheoryPlugin


@dataclass(frozen=True)
class Cooperation:
    symbol: str
    arity: int
    morphism: Any  # S -> arity * S


@dataclass(frozen=True)
class Copower:
    """``n * S`` with its coproduct injections ``j_0 .. j_{n-1}``."""

    n: int
    obj: Any
    injections: tuple


class BaseInstance:
    name = "instance"
    has_coequalizers = False
    has_factorizations = False
    hom_S_finite = False

    theory: TheoryPlugin
    S: Any

    def _key(self) -> tuple:
        return ()

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    # --- category --------------------------------------------------------

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, X):
        raise NotImplementedError

    def compose(self, g, f):
        """``g . f`` (apply ``f`` first)."""
        raise NotImplementedError

    def check_object(self, X):
        """Raise :class:`DomainError` unless ``X`` is an object."""

    def copower(self, n: int) -> Copower:
        raise NotImplementedError

    def cotuple(self, points: Sequence, Y) -> Any:
        """``[a_0, ..., a_{n-1}]: n * S -> Y`` from morphisms ``a_i: S -> Y``."""
        raise NotImplementedError

    @property
    def cooperations(self) -> list[Cooperation]:
        raise NotImplementedError

    # --- points ------------------------------------------------------------

    def point(self, a):
        """The element of ``hom_S(X)`` represented by a morphism ``a: S -> X``."""
        raise NotImplementedError

    def point_morphism(self, X, x):
        """Inverse of :meth:`point`."""
        raise NotImplementedError

    def apply_point(self, f, x):
        """``f . a`` as a point, for ``a`` the morphism of the point ``x``."""
        return self.point(self.compose(f, self.point_morphism(self.dom(f), x)))

    def points(self, X) -> Sequence:
        raise CapabilityError(f"{self.name} has no finite point set for {X!r}")

    def is_point(self, X, x) -> bool:
        raise NotImplementedError

    def induced(self, X, symbol: str):
        """The operation ``omega_X`` on ``hom_S(X)`` induced by a cooperation."""
        for co in self.cooperations:
            if co.symbol == symbol:
                break
        else:
            raise DomainError(f"{self.name} has no cooperation {symbol!r}")

        def op(*xs):
            if len(xs) != co.arity:
                raise DomainError(f"{symbol!r} takes {co.arity} points, got {len(xs)}")
            tupled = self.cotuple([self.point_morphism(X, x) for x in xs], X)
            return self.point(self.compose(tupled, co.morphism))

        return op

    def induced_operations(self, X) -> dict:
        return {co.symbol: self.induced(X, co.symbol) for co in self.cooperations}

    def hom_S(self, X) -> TAlgebra:
        """``hom(S, X)`` with the induced T-algebra structure."""
        self.check_object(X)
        ops = self.induced_operations(X)
        return TAlgebra(
            self.theory.signature, ops,
            elements=lambda: self.points(X),
            contains=lambda x: self.is_point(X, x),
            name=f"hom(S, {self.format_object(X)})",
        )

    # --- morphism classes ----------------------------------------------------

    def is_epi(self, f) -> bool:
        raise NotImplementedError

    def is_mono(self, f) -> bool:
        raise NotImplementedError

    def is_regular_epi(self, f) -> bool:
        raise NotImplementedError

    def is_iso(self, f) -> bool:
        return self.is_mono(f) and self.is_regular_epi(f)

    # --- colimits ------------------------------------------------------------

    def coequalize(self, X, pairs: Sequence[tuple]) -> Any:
        """Joint coequalizer ``q: X -> Q`` of parallel pairs into ``X``."""
        raise CapabilityError(f"{self.name} has no coequalizers")

    def cointersection(self, X, quotients: Sequence) -> Any:
        """Wide pushout of regular epis out of ``X``, as a regular epi."""
        raise CapabilityError(f"{self.name} has no co-intersections")

    def factorize(self, f) -> tuple:
        """``(e, m)`` with ``f = m . e``, ``e`` a regular epi and ``m`` a mono."""
        raise CapabilityError(f"{self.name} has no (regular epi, mono)-factorizations")

    def factor_through(self, f, p):
        """The ``h`` with ``h . p == f`` for a regular epi ``p``, or ``None``."""
        raise CapabilityError(f"{self.name} cannot factor through quotients")

    def enumerate_morphisms(self, X, Y) -> Iterator:
        raise CapabilityError(f"{self.name} has infinite hom-sets")

    # --- text ------------------------------------------------------------------

    def format_object(self, X) -> str:
        return repr(X)

    def format_point(self, x) -> str:
        return repr(x)

    def check_coherence(self, X, samples: Sequence[tuple]) -> list[str]:
        """Cotuple laws ``[a_i] . j_k == a_k`` on sample point tuples.

        Returns a description of every failure.
        """
        failures = []
        for xs in samples:
            cp = self.copower(len(xs))
            t = self.cotuple([self.point_morphism(X, x) for x in xs], X)
            for k, j in enumerate(cp.injections):
                if self.point(self.compose(t, j)) != xs[k]:
                    failures.append(f"[a_i].j_{k} != a_{k} for {xs}")
        return failures
