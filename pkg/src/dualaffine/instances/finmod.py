"""Finite modules over ``R = Z/m`` with ``S = R``.

An object is ``R^k`` modulo the row span of a relation matrix, kept in
Howell form so that equal presentations compare equal.  Elements are the
canonical coset representatives.  A morphism is a ``k x k'`` matrix acting
on row vectors; row ``i`` is the image of the ``i``-th basis vector.

With the MODULE theory, ``S = R`` carries the cooperations

* ``add``:     ``R -> R + R``, ``1 |-> (1, 1)``;
* ``zero``:    ``R -> 0``;
* ``scale_c``: ``R -> R``, ``1 |-> c``;

which induce the module structure of ``hom_R(R, X) = X``.  With EMPTY there
are no cooperations and ``X`` is just a set of points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .. import zmod
from ..errors import DomainError
from ..theory import EMPTY, Subalgebra, TAlgebra, TheoryPlugin, module_theory
from .base import BaseInstance, Cooperation, Copower


@dataclass(frozen=True)
class FinModObj:
    modulus: int
    gens: int
    rels: zmod.Matrix = ()

    def __post_init__(self):
        if self.gens < 0:
            raise DomainError("a module needs a natural number of generators")
        object.__setattr__(self, "rels", zmod.howell_form(self.rels, self.modulus, self.gens))

    def reduce(self, v: Sequence[int]) -> zmod.Vector:
        if len(v) != self.gens:
            raise DomainError(f"vector {tuple(v)} does not have {self.gens} coordinates")
        return zmod.reduce_vector(v, self.rels, self.modulus)

    @property
    def size(self) -> int:
        return self.modulus ** self.gens // zmod.span_size(self.rels, self.modulus)

    def elements(self) -> list[zmod.Vector]:
        return zmod.quotient_representatives(self.rels, self.modulus, self.gens)


@dataclass(frozen=True)
class FinModMap:
    dom: FinModObj
    cod: FinModObj
    matrix: zmod.Matrix

    def __post_init__(self):
        if self.dom.modulus != self.cod.modulus:
            raise DomainError("modules over different rings")
        rows = tuple(tuple(r) for r in self.matrix)
        if len(rows) != self.dom.gens:
            raise DomainError(f"matrix needs {self.dom.gens} rows, got {len(rows)}")
        rows = tuple(self.cod.reduce(r) for r in rows)
        m = self.dom.modulus
        for rel in self.dom.rels:
            if any(self.cod.reduce(zmod.vec_mat(rel, rows, m, self.cod.gens))):
                raise DomainError(f"relation {rel} is not sent to zero")
        object.__setattr__(self, "matrix", rows)

    def __call__(self, v):
        return self.cod.reduce(zmod.vec_mat(v, self.matrix, self.dom.modulus, self.cod.gens))


class FinMod(BaseInstance):
    has_coequalizers = True
    has_factorizations = True
    hom_S_finite = True

    def __init__(self, modulus: int, theory: str | TheoryPlugin = "module"):
        if not 1 < modulus <= 64:
            raise DomainError(f"modulus {modulus} outside the supported range 2..64")
        self.modulus = modulus
        if isinstance(theory, str):
            if theory not in ("module", "empty"):
                raise DomainError(f"finmod supports theories 'module' and 'empty', got {theory!r}")
            theory = module_theory(modulus) if theory == "module" else EMPTY
        self.theory = theory
        self.name = f"finmod(Z/{modulus}, {theory.name})"
        self.S = FinModObj(modulus, 1)
        self._cooperations = self._build_cooperations()

    def _key(self) -> tuple:
        return (self.modulus, self.theory.name)

    # objects

    def obj(self, gens: int, rels: Sequence[Sequence[int]] = ()) -> FinModObj:
        return FinModObj(self.modulus, gens, tuple(tuple(r) for r in rels))

    def free(self, n: int) -> FinModObj:
        return FinModObj(self.modulus, n)

    def check_object(self, X):
        if not isinstance(X, FinModObj) or X.modulus != self.modulus:
            raise DomainError(f"not a module over Z/{self.modulus}: {X!r}")

    def map(self, dom: FinModObj, cod: FinModObj, matrix) -> FinModMap:
        return FinModMap(dom, cod, tuple(tuple(r) for r in matrix))

    # category

    def identity(self, X):
        return FinModMap(X, X, tuple(tuple(int(i == j) for j in range(X.gens)) for i in range(X.gens)))

    def compose(self, g: FinModMap, f: FinModMap) -> FinModMap:
        if f.cod != g.dom:
            raise DomainError("composition of maps whose ends do not meet")
        return FinModMap(f.dom, g.cod, zmod.mat_mul(f.matrix, g.matrix, self.modulus, g.cod.gens))

    def copower(self, n: int) -> Copower:
        X = self.free(n)
        inj = tuple(FinModMap(self.S, X, (tuple(int(i == j) for j in range(n)),)) for i in range(n))
        return Copower(n, X, inj)

    def cotuple(self, points, Y):
        for a in points:
            if a.dom != self.S or a.cod != Y:
                raise DomainError("cotuple components must be points of the same module")
        return FinModMap(self.free(len(points)), Y, tuple(a.matrix[0] for a in points))

    def _build_cooperations(self) -> list[Cooperation]:
        if self.theory is EMPTY or not self.theory.signature.operations:
            return []
        m = self.modulus
        out = []
        for symbol, n in self.theory.signature.operations:
            X = self.free(n)
            if symbol == "add":
                row = (1, 1)
            elif symbol == "zero":
                row = ()
            else:
                row = (int(symbol.split("_")[1]) % m,)
            out.append(Cooperation(symbol, n, FinModMap(self.S, X, (row,))))
        return out

    @property
    def cooperations(self):
        return self._cooperations

    # points

    def point(self, a):
        if a.dom != self.S:
            raise DomainError("a point is a map out of R")
        return a.matrix[0]

    def point_morphism(self, X, x):
        return FinModMap(self.S, X, (tuple(x),))

    def apply_point(self, f, x):
        return f(x)

    def points(self, X):
        return X.elements()

    def hom_S(self, X) -> TAlgebra:
        alg = super().hom_S(X)
        if self.theory is not EMPTY:
            alg.closure = lambda ambient, gens: self.span_subalgebra(ambient, X, gens)
        return alg

    def span_subalgebra(self, ambient: TAlgebra, X: FinModObj, gens) -> Subalgebra:
        """Submodule generation by row reduction instead of saturation."""
        m = self.modulus
        form = zmod.howell_form(list(gens) + list(X.rels), m, X.gens)
        orders = [m // p for _, p in zmod.pivot_columns(form)]
        elements = set()
        for coeffs in itertools.product(*(range(k) for k in orders)):
            v = (0,) * X.gens
            for c, row in zip(coeffs, form):
                v = tuple((a + c * b) % m for a, b in zip(v, row))
            elements.add(X.reduce(v))
        return Subalgebra(ambient, elements=elements, generators=list(gens))

    def is_point(self, X, x) -> bool:
        return isinstance(x, tuple) and len(x) == X.gens and all(isinstance(c, int) for c in x) and X.reduce(x) == x

    # morphism classes

    def kernel_form(self, f: FinModMap) -> zmod.Matrix:
        """Howell form of the preimage of ``0`` in ``R^k`` (relations of the domain included)."""
        m, X, Y = self.modulus, f.dom, f.cod
        stacked = list(f.matrix) + list(Y.rels)
        ker = zmod.left_kernel(stacked, m, Y.gens)
        return zmod.howell_form([r[: X.gens] for r in ker] + list(X.rels), m, X.gens)

    def image_form(self, f: FinModMap) -> zmod.Matrix:
        return zmod.howell_form(list(f.matrix) + list(f.cod.rels), self.modulus, f.cod.gens)

    def is_mono(self, f) -> bool:
        return self.kernel_form(f) == f.dom.rels

    def is_epi(self, f) -> bool:
        return zmod.span_size(self.image_form(f), self.modulus) == self.modulus ** f.cod.gens

    is_regular_epi = is_epi

    # colimits

    def quotient(self, X: FinModObj, rows) -> FinModMap:
        """The projection ``X -> X / span(rows)``."""
        Q = FinModObj(self.modulus, X.gens, tuple(X.rels) + tuple(tuple(r) for r in rows))
        return FinModMap(X, Q, self.identity(X).matrix)

    def coequalize(self, X, pairs):
        m = self.modulus
        rows = []
        for f, g in pairs:
            if f.cod != X or g.cod != X or f.dom != g.dom:
                raise DomainError("coequalize needs parallel pairs into X")
            for u, v in zip(f.matrix, g.matrix):
                rows.append(tuple((a - b) % m for a, b in zip(u, v)))
        return self.quotient(X, rows)

    def cointersection(self, X, quotients):
        rows = []
        for q in quotients:
            if q.dom != X:
                raise DomainError("co-intersection needs quotients of X")
            rows.extend(self.kernel_form(q))
        return self.quotient(X, rows)

    def factorize(self, f):
        e = self.quotient(f.dom, self.kernel_form(f))
        return e, FinModMap(e.cod, f.cod, f.matrix)

    def factor_through(self, f, p):
        if f.dom != p.dom:
            raise DomainError("factor_through needs maps with a common domain")
        m, X, P = self.modulus, p.dom, p.cod
        stacked = list(p.matrix) + list(P.rels)
        rows = []
        for j in range(P.gens):
            unit = tuple(int(i == j) for i in range(P.gens))
            x = zmod.solve(stacked, unit, m, P.gens)
            if x is None:
                return None
            rows.append(f(x[: X.gens]))
        try:
            h = FinModMap(P, f.cod, tuple(rows))
        except DomainError:
            return None
        return h if self.compose(h, p) == f else None

    def enumerate_morphisms(self, X, Y):
        for rows in itertools.product(Y.elements(), repeat=X.gens):
            try:
                yield FinModMap(X, Y, rows)
            except DomainError:
                continue

    def format_object(self, X) -> str:
        rels = "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in X.rels) + "]"
        return f"finmod:Z/{X.modulus}:gens={X.gens}:rels={rels}"
