"""Finite sets with ``S = 1``.

Objects are sizes ``n`` (the set ``{0, ..., n-1}``); a map is its table of
values.  A point ``1 -> X`` is identified with its value, so
``hom_S(X) = X``.  The bound theory is EMPTY: ``1`` carries no
cooperations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..errors import DomainError
from ..theory import EMPTY
from .base import BaseInstance, Copower


@dataclass(frozen=True)
class FinSetMap:
    dom: int
    cod: int
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(x) for x in self.table)
        if len(table) != self.dom:
            raise DomainError(f"a map out of {self.dom} needs {self.dom} values, got {len(table)}")
        if any(not 0 <= x < self.cod for x in table):
            raise DomainError(f"values {table} leave the codomain {self.cod}")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return self.table[x]


class _Partition:
    # minimum element of each block is its representative
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)

    def quotient(self) -> FinSetMap:
        n = len(self.parent)
        roots = sorted({self.find(x) for x in range(n)})
        index = {r: i for i, r in enumerate(roots)}
        return FinSetMap(n, len(roots), tuple(index[self.find(x)] for x in range(n)))


class FinSet(BaseInstance):
    name = "finset"
    has_coequalizers = True
    has_factorizations = True
    hom_S_finite = True
    theory = EMPTY
    S = 1

    def check_object(self, X):
        if not isinstance(X, int) or X < 0:
            raise DomainError(f"finset objects are sizes, got {X!r}")

    def map(self, dom: int, cod: int, table: Sequence[int]) -> FinSetMap:
        return FinSetMap(dom, cod, tuple(table))

    def identity(self, X):
        return FinSetMap(X, X, tuple(range(X)))

    def compose(self, g: FinSetMap, f: FinSetMap) -> FinSetMap:
        if f.cod != g.dom:
            raise DomainError(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
        return FinSetMap(f.dom, g.cod, tuple(g.table[x] for x in f.table))

    def copower(self, n: int) -> Copower:
        return Copower(n, n, tuple(FinSetMap(1, n, (i,)) for i in range(n)))

    def cotuple(self, points, Y):
        for a in points:
            if a.dom != 1 or a.cod != Y:
                raise DomainError(f"cotuple components must be points of {Y}")
        return FinSetMap(len(points), Y, tuple(a.table[0] for a in points))

    @property
    def cooperations(self):
        return []

    def point(self, a: FinSetMap) -> int:
        if a.dom != 1:
            raise DomainError("a point is a map out of 1")
        return a.table[0]

    def point_morphism(self, X, x):
        return FinSetMap(1, X, (x,))

    def apply_point(self, f, x):
        return f.table[x]

    def points(self, X):
        return list(range(X))

    def is_point(self, X, x) -> bool:
        return isinstance(x, int) and 0 <= x < X

    def is_epi(self, f) -> bool:
        return len(set(f.table)) == f.cod

    def is_mono(self, f) -> bool:
        return len(set(f.table)) == f.dom

    is_regular_epi = is_epi

    def coequalize(self, X, pairs):
        part = _Partition(X)
        for f, g in pairs:
            if f.cod != X or g.cod != X or f.dom != g.dom:
                raise DomainError("coequalize needs parallel pairs into X")
            for z in range(f.dom):
                part.union(f.table[z], g.table[z])
        return part.quotient()

    def cointersection(self, X, quotients):
        part = _Partition(X)
        for q in quotients:
            if q.dom != X:
                raise DomainError("co-intersection needs quotients of X")
            first: dict[int, int] = {}
            for x, y in enumerate(q.table):
                part.union(first.setdefault(y, x), x)
        return part.quotient()

    def factorize(self, f):
        image = sorted(set(f.table))
        index = {y: i for i, y in enumerate(image)}
        e = FinSetMap(f.dom, len(image), tuple(index[y] for y in f.table))
        m = FinSetMap(len(image), f.cod, tuple(image))
        return e, m

    def factor_through(self, f, p):
        if f.dom != p.dom:
            raise DomainError("factor_through needs maps with a common domain")
        values: dict[int, int] = {}
        for x in range(f.dom):
            if values.setdefault(p.table[x], f.table[x]) != f.table[x]:
                return None
        if len(values) != p.cod:
            return None
        return FinSetMap(p.cod, f.cod, tuple(values[i] for i in range(p.cod)))

    def enumerate_morphisms(self, X, Y):
        for table in itertools.product(range(Y), repeat=X):
            yield FinSetMap(X, Y, table)

    def format_object(self, X) -> str:
        return f"finset:{X}"
