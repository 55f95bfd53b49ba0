"""Signatures, T-algebras, subalgebra generation and free algebras.

Three theory plugins ship with the engine:

* ``EMPTY``: no operations, every subset is a subalgebra;
* ``module_theory(m)``: modules over ``Z/m`` (binary ``add``, nullary
  ``zero`` and one unary ``scale_k`` per ring element);
* ``GROUP``: groups (binary ``mul``, unary ``inv``, nullary ``one``).

Finite algebras are closed by a work-queue fixed point.  Symbolic carriers
(free groups) carry a plugin-supplied closure procedure instead; for groups
that procedure is a Stallings folding.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from . import freegroup
from .errors import CapabilityError, DomainError
from .freegroup import StallingsGraph, Word

DEFAULT_WORD_BOUND = 16


@dataclass(frozen=True)
class Signature:
    operations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = [s for s, _ in self.operations]
        if len(set(symbols)) != len(symbols):
            raise DomainError(f"duplicate operation symbols in {symbols}")
        for s, n in self.operations:
            if not isinstance(n, int) or n < 0:
                raise DomainError(f"arity of {s!r} must be a natural number, got {n!r}")

    def arity(self, symbol: str) -> int:
        for s, n in self.operations:
            if s == symbol:
                return n
        raise DomainError(f"unknown operation {symbol!r}")

    @property
    def symbols(self) -> list[str]:
        return [s for s, _ in self.operations]


class TAlgebra:
    """An algebra for a signature.

    A finite carrier is given by ``elements`` (a sequence, or a zero-argument
    callable producing one, so large carriers are only listed on demand).
    A symbolic carrier is given by a ``contains`` predicate and a ``sampler``
    drawing elements from a seeded RNG; ``closure`` then supplies subalgebra
    generation.
    """

    def __init__(
        self,
        signature: Signature,
        operations: Mapping[str, Callable[..., Any]],
        *,
        elements: Sequence | Callable[[], Sequence] | None = None,
        contains: Callable[[Any], bool] | None = None,
        sampler: Callable[[random.Random], Any] | None = None,
        closure: Callable[["TAlgebra", list], "Subalgebra"] | None = None,
        name: str = "",
    ):
        missing = set(signature.symbols) - set(operations)
        if missing:
            raise DomainError(f"no interpretation for {sorted(missing)}")
        if elements is None and contains is None:
            raise DomainError("an algebra needs either elements or a membership predicate")
        self.signature = signature
        self.operations = dict(operations)
        self._elements = elements
        self._cached: tuple | None = None
        self._contains = contains
        self.sampler = sampler
        self.closure = closure
        self.name = name

    @property
    def is_finite(self) -> bool:
        return self._elements is not None

    @property
    def elements(self) -> tuple:
        if self._elements is None:
            raise CapabilityError(f"{self.name or 'algebra'} has a symbolic carrier")
        if self._cached is None:
            els = self._elements() if callable(self._elements) else self._elements
            self._cached = tuple(els)
        return self._cached

    def __contains__(self, x) -> bool:
        if self._contains is not None:
            return self._contains(x)
        return x in set(self.elements)

    def apply(self, symbol: str, *args):
        n = self.signature.arity(symbol)
        if len(args) != n:
            raise DomainError(f"{symbol!r} takes {n} arguments, got {len(args)}")
        return self.operations[symbol](*args)

    def sample(self, rng: random.Random, count: int) -> list:
        if self.is_finite:
            els = self.elements
            return [rng.choice(els) for _ in range(count)] if els else []
        if self.sampler is None:
            raise CapabilityError(f"{self.name or 'algebra'} cannot be sampled")
        return [self.sampler(rng) for _ in range(count)]

    def __repr__(self) -> str:
        return f"TAlgebra({self.name or '?'})"


class Subalgebra:
    """A subset of an ambient algebra closed under its operations.

    ``elements`` is set when the subalgebra is materialized.  Otherwise
    membership is decided by ``member`` (for groups, the Stallings graph in
    ``graph``).
    """

    def __init__(
        self,
        ambient: TAlgebra,
        *,
        elements: Iterable | None = None,
        member: Callable[[Any], bool] | None = None,
        generators: Sequence = (),
        graph: StallingsGraph | None = None,
    ):
        self.ambient = ambient
        self.generators = tuple(generators)
        self.elements = frozenset(elements) if elements is not None else None
        self.graph = graph
        if self.elements is None and member is None:
            raise DomainError("a subalgebra needs elements or a membership predicate")
        self._member = member

    @property
    def is_materialized(self) -> bool:
        return self.elements is not None

    def __contains__(self, x) -> bool:
        if self.elements is not None:
            return x in self.elements
        return self._member(x)

    def sorted_elements(self) -> list:
        if self.elements is None:
            raise CapabilityError("subalgebra is not materialized")
        return sorted(self.elements, key=_sort_key)

    def __len__(self) -> int:
        if self.elements is None:
            raise CapabilityError("subalgebra is not materialized")
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subalgebra):
            return NotImplemented
        if self.elements is not None and other.elements is not None:
            return self.elements == other.elements
        if self.graph is not None and other.graph is not None:
            return self.graph == other.graph
        return NotImplemented

    def __hash__(self):
        return hash(self.elements) if self.elements is not None else hash(self.graph)

    def as_algebra(self) -> TAlgebra:
        """The subalgebra viewed as an algebra in its own right."""
        amb = self.ambient
        if self.elements is not None:
            return TAlgebra(amb.signature, amb.operations, elements=self.sorted_elements(), name=f"sub({amb.name})")
        gens = list(self.generators)
        sampler = (lambda rng: random_product(rng, amb, gens, 4)) if gens else None
        return TAlgebra(
            amb.signature, amb.operations, contains=self.__contains__, sampler=sampler,
            closure=amb.closure, name=f"sub({amb.name})",
        )

    def __repr__(self) -> str:
        if self.elements is not None:
            return f"Subalgebra({self.sorted_elements()})"
        return f"Subalgebra(generated by {[str(g) for g in self.generators]})"


def _sort_key(x):
    key = getattr(x, "sort_key", None)
    return key() if key is not None else x


def random_product(rng: random.Random, algebra: TAlgebra, gens: Sequence, depth: int):
    """A random term over ``gens`` evaluated in ``algebra``; used for sampling."""
    ops = algebra.signature.operations
    if depth == 0 or not ops:
        return rng.choice(list(gens))
    symbol, n = rng.choice(ops)
    args = [random_product(rng, algebra, gens, depth - 1) for _ in range(n)]
    return algebra.apply(symbol, *args)


def is_closed(algebra: TAlgebra, subset: Iterable) -> bool:
    """Exhaustively test closure of a finite subset under every operation."""
    subset = set(subset)
    for symbol, n in algebra.signature.operations:
        for args in itertools.product(subset, repeat=n):
            if algebra.apply(symbol, *args) not in subset:
                return False
    return True


def _saturate(algebra: TAlgebra, generators: Sequence) -> list:
    order: list = []
    seen: set = set()

    def push(x):
        if x not in seen:
            seen.add(x)
            order.append(x)

    for symbol, n in algebra.signature.operations:
        if n == 0:
            push(algebra.apply(symbol))
    for g in sorted(set(generators), key=_sort_key):
        push(g)
    positive = [(s, n) for s, n in algebra.signature.operations if n > 0]
    i = 0
    while i < len(order):
        x = order[i]
        done = order[:i]
        upto = order[: i + 1]
        for symbol, n in positive:
            # every tuple over order[:i+1] containing x, listed once:
            # slot `pos` is the first occurrence of x
            for pos in range(n):
                for before in itertools.product(done, repeat=pos):
                    for after in itertools.product(upto, repeat=n - pos - 1):
                        push(algebra.apply(symbol, *before, x, *after))
        i += 1
    return order


def generate_subalgebra(ambient: TAlgebra, generators: Iterable) -> Subalgebra:
    """The least subalgebra of ``ambient`` containing ``generators``."""
    generators = list(generators)
    for g in generators:
        if g not in ambient:
            raise DomainError(f"generator {g!r} is not in the carrier of {ambient.name or 'the algebra'}")
    if ambient.closure is not None:
        return ambient.closure(ambient, generators)
    if not ambient.is_finite:
        raise CapabilityError(f"{ambient.name or 'algebra'} has no closure procedure for its symbolic carrier")
    return Subalgebra(ambient, elements=_saturate(ambient, generators), generators=generators)


@dataclass(frozen=True)
class Homomorphism:
    """A structure-preserving map ``domain -> codomain`` given by ``fn``."""

    domain: TAlgebra
    codomain: TAlgebra
    fn: Callable[[Any], Any]

    def __call__(self, x):
        return self.fn(x)


def is_homomorphism(
    f: Callable[[Any], Any],
    dom: TAlgebra,
    cod: TAlgebra,
    *,
    samples: int = 200,
    seed: int = 0,
) -> bool:
    """Whether ``f`` commutes with every operation.

    Finite domains are checked on every tuple; symbolic ones on ``samples``
    seeded random tuples.
    """
    if dom.signature != cod.signature:
        raise DomainError("algebras have different signatures")
    rng = random.Random(seed)
    for symbol, n in dom.signature.operations:
        if dom.is_finite:
            tuples: Iterable = itertools.product(dom.elements, repeat=n)
        else:
            tuples = [tuple(dom.sample(rng, n)) for _ in range(samples if n else 1)]
        for args in tuples:
            if f(dom.apply(symbol, *args)) != cod.apply(symbol, *(f(a) for a in args)):
                return False
    return True


# --- plugins ----------------------------------------------------------------


class TheoryPlugin:
    """An equational theory with a construction of its free algebras."""

    name = "theory"
    signature: Signature

    def free_algebra(self, n: int) -> TAlgebra:
        raise NotImplementedError

    def hom_from_free(self, n: int, images: Sequence, codomain: TAlgebra) -> Homomorphism:
        raise NotImplementedError

    def laws(self) -> list[tuple[str, int, Callable[..., bool]]]:
        """``(name, number of variables, predicate(algebra, *xs))`` triples."""
        return []

    def check_laws(self, algebra: TAlgebra, *, samples: int = 200, seed: int = 0) -> list[str]:
        """Names of laws failing on ``samples`` seeded tuples (empty when all hold)."""
        rng = random.Random(seed)
        failed = []
        for name, n, law in self.laws():
            for _ in range(samples):
                xs = algebra.sample(rng, n)
                if len(xs) < n:
                    break
                if not law(algebra, *xs):
                    failed.append(name)
                    break
        return failed

    def __repr__(self) -> str:
        return self.name


class EmptyTheory(TheoryPlugin):
    name = "empty"
    signature = Signature(())

    def free_algebra(self, n: int) -> TAlgebra:
        return TAlgebra(self.signature, {}, elements=range(n), name=f"free_empty({n})")

    def hom_from_free(self, n, images, codomain):
        if len(images) != n:
            raise DomainError(f"need {n} images, got {len(images)}")
        images = tuple(images)
        return Homomorphism(self.free_algebra(n), codomain, lambda i: images[i])


class ModuleTheory(TheoryPlugin):
    """Modules over ``Z/modulus``."""

    def __init__(self, modulus: int):
        if modulus < 1:
            raise DomainError("modulus must be positive")
        self.modulus = modulus
        self.name = f"module(Z/{modulus})"
        self.signature = Signature(
            (("add", 2), ("zero", 0)) + tuple((f"scale_{k}", 1) for k in range(modulus))
        )

    def __eq__(self, other):
        return isinstance(other, ModuleTheory) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("module", self.modulus))

    def vector_algebra(self, k: int) -> TAlgebra:
        m = self.modulus
        ops: dict[str, Callable] = {
            "add": lambda u, v: tuple((x + y) % m for x, y in zip(u, v)),
            "zero": lambda: (0,) * k,
        }
        for c in range(m):
            ops[f"scale_{c}"] = lambda u, c=c: tuple((c * x) % m for x in u)
        return TAlgebra(
            self.signature, ops,
            elements=lambda: list(itertools.product(range(m), repeat=k)),
            contains=lambda v: isinstance(v, tuple) and len(v) == k and all(0 <= x < m for x in v),
            name=f"(Z/{m})^{k}",
        )

    def free_algebra(self, n: int) -> TAlgebra:
        return self.vector_algebra(n)

    def hom_from_free(self, n, images, codomain):
        if len(images) != n:
            raise DomainError(f"need {n} images, got {len(images)}")
        images = tuple(images)

        def fn(v):
            acc = codomain.apply("zero")
            for c, img in zip(v, images):
                acc = codomain.apply("add", acc, codomain.apply(f"scale_{c}", img))
            return acc

        return Homomorphism(self.free_algebra(n), codomain, fn)

    def laws(self):
        m = self.modulus

        def scale(alg, c, x):
            return alg.apply(f"scale_{c % m}", x)

        laws = [
            ("add associative", 3, lambda A, x, y, z: A.apply("add", A.apply("add", x, y), z) == A.apply("add", x, A.apply("add", y, z))),
            ("add commutative", 2, lambda A, x, y: A.apply("add", x, y) == A.apply("add", y, x)),
            ("zero unit", 1, lambda A, x: A.apply("add", x, A.apply("zero")) == x),
            ("inverse", 1, lambda A, x: A.apply("add", x, scale(A, m - 1, x)) == A.apply("zero")),
            ("scale one", 1, lambda A, x: scale(A, 1, x) == x),
        ]
        for c in range(m):
            laws.append((f"scale_{c} additive", 2, lambda A, x, y, c=c: scale(A, c, A.apply("add", x, y)) == A.apply("add", scale(A, c, x), scale(A, c, y))))
            laws.append((f"scale_{c} distributes", 1, lambda A, x, c=c: all(
                scale(A, c + d, x) == A.apply("add", scale(A, c, x), scale(A, d, x))
                and scale(A, c * d, x) == scale(A, c, scale(A, d, x))
                for d in range(m))))
        return laws


class GroupTheory(TheoryPlugin):
    name = "group"
    signature = Signature((("mul", 2), ("inv", 1), ("one", 0)))

    def free_algebra(self, n: int) -> TAlgebra:
        return free_group_algebra(n)

    def hom_from_free(self, n, images, codomain):
        if len(images) != n:
            raise DomainError(f"need {n} images, got {len(images)}")
        images = tuple(images)

        def fn(w: Word):
            acc = codomain.apply("one")
            for g, s in w.letters:
                x = images[g] if s > 0 else codomain.apply("inv", images[g])
                acc = codomain.apply("mul", acc, x)
            return acc

        return Homomorphism(self.free_algebra(n), codomain, fn)

    def laws(self):
        return [
            ("associative", 3, lambda G, x, y, z: G.apply("mul", G.apply("mul", x, y), z) == G.apply("mul", x, G.apply("mul", y, z))),
            ("unit", 1, lambda G, x: G.apply("mul", x, G.apply("one")) == x == G.apply("mul", G.apply("one"), x)),
            ("inverse", 1, lambda G, x: G.apply("mul", x, G.apply("inv", x)) == G.apply("one")),
            ("involutive inverse", 1, lambda G, x: G.apply("inv", G.apply("inv", x)) == x),
        ]


EMPTY = EmptyTheory()
GROUP = GroupTheory()


def module_theory(modulus: int) -> ModuleTheory:
    return ModuleTheory(modulus)


def stallings_closure(ambient: TAlgebra, generators: list) -> Subalgebra:
    """Subgroup generation in a free group carrier.

    ``ambient`` must be a free group of words whose group operations are
    concatenation, inversion and the empty word; the rose instance checks
    this coherence in its tests.
    """
    rank = getattr(ambient, "rank", None)
    if rank is None:
        raise CapabilityError("Stallings closure needs a free group carrier with a rank")
    gens = sorted(set(generators), key=Word.sort_key)
    graph = freegroup.fold(gens, rank)
    return Subalgebra(ambient, member=graph.member, generators=gens, graph=graph)


def free_group_algebra(rank: int, operations: Mapping[str, Callable] | None = None, name: str | None = None) -> TAlgebra:
    """``F_rank`` as a symbolic group with Stallings-backed generation.

    ``operations`` overrides the interpretations (the rose instance passes
    the operations induced by its cooperations).
    """
    if operations is None:
        operations = {"mul": freegroup.concat, "inv": freegroup.invert, "one": lambda: Word.identity(rank)}
    alg = TAlgebra(
        GROUP.signature, operations,
        contains=lambda w: isinstance(w, Word) and w.rank == rank,
        sampler=lambda rng: freegroup.random_word(rng, rank, DEFAULT_WORD_BOUND),
        closure=stallings_closure,
        name=name or f"F_{rank}",
    )
    alg.rank = rank
    return alg
