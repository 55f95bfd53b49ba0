"""Exhaustive and seeded enumeration of small spaces and quotients.

These are the oracle backbones of the law and completeness suites and of
the ``enumerate`` command.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from . import zmod
from .affine import AffineMorphism, DuallyAffineSpace, check_morphism
from .completeness import classify_space
from .errors import DomainError
from .instances.finmod import FinMod, FinModObj
from .instances.finset import FinSet, FinSetMap
from .zariski import LawReport, RegularQuotient, check_inverse_image, check_monotone, check_single, classify, leq

FINSET_LIMIT = 5
FINMOD_LIMITS = {2: 2, 3: 2}


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n``: each is a quotient table
    with blocks numbered by first occurrence."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            yield from rec(prefix + [b], max(top, b))

    yield from rec([0], 0)


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def finset_spaces(inst: FinSet, n: int) -> Iterator[DuallyAffineSpace]:
    alg = inst.hom_S(n)
    for A in subsets(range(n)):
        yield DuallyAffineSpace(inst, n, elements=A, algebra=alg, check=False)


def finset_quotients(space: DuallyAffineSpace) -> Iterator[RegularQuotient]:
    n = space.X
    for table in set_partitions(n):
        yield RegularQuotient(space, FinSetMap(n, max(table, default=-1) + 1, table), check=False)


def submodule_forms(inst: FinMod, X: FinModObj) -> list[zmod.Matrix]:
    """Howell forms (relations of ``X`` included) of all submodules of ``X``."""
    m = inst.modulus
    seen = {zmod.howell_form(X.rels, m, X.gens)}
    frontier = list(seen)
    points = inst.points(X)
    while frontier:
        nxt = []
        for form in frontier:
            for x in points:
                if not zmod.in_span(x, form, m):
                    bigger = zmod.howell_form(list(form) + [x], m, X.gens)
                    if bigger not in seen:
                        seen.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return sorted(seen, key=lambda f: (zmod.span_size(f, m), f))


def finmod_spaces(inst: FinMod, X: FinModObj) -> Iterator[DuallyAffineSpace]:
    """All subsets (empty theory) or all submodules (module theory)."""
    alg = inst.hom_S(X)
    if inst.theory.signature.operations:
        for form in submodule_forms(inst, X):
            yield DuallyAffineSpace(inst, X, generators=list(form) or [], algebra=alg)
    else:
        for A in subsets(inst.points(X)):
            yield DuallyAffineSpace(inst, X, elements=A, algebra=alg, check=False)


def finmod_quotients(space: DuallyAffineSpace) -> Iterator[RegularQuotient]:
    inst = space.instance
    for form in submodule_forms(inst, space.X):
        yield RegularQuotient(space, inst.quotient(space.X, form), check=False)


def spaces(inst, size: int) -> Iterator[DuallyAffineSpace]:
    if isinstance(inst, FinSet):
        yield from finset_spaces(inst, size)
    else:
        yield from finmod_spaces(inst, inst.free(size))


def quotients(space: DuallyAffineSpace) -> Iterator[RegularQuotient]:
    if isinstance(space.instance, FinSet):
        yield from finset_quotients(space)
    else:
        yield from finmod_quotients(space)


def affine_maps_into(target: DuallyAffineSpace, sizes) -> Iterator[AffineMorphism]:
    """Every affine morphism from a space over an object of the given sizes
    into ``target``."""
    inst = target.instance
    for k in sizes:
        for dom in spaces(inst, k):
            for f in inst.enumerate_morphisms(dom.X, target.X):
                if check_morphism(f, dom, target):
                    yield AffineMorphism(dom, target, f)


# --- seeded Sub(FinSet) configurations ----------------------------------------


def random_partition(rng: random.Random, n: int) -> tuple[int, ...]:
    labels = [rng.randrange(max(n, 1)) for _ in range(n)]
    first: dict[int, int] = {}
    return tuple(first.setdefault(x, len(first)) for x in labels)


def coarsen(rng: random.Random, table: tuple[int, ...]) -> tuple[int, ...]:
    """A random partition that the given one refines."""
    k = max(table, default=-1) + 1
    merge = random_partition(rng, k)
    first: dict[int, int] = {}
    return tuple(first.setdefault(merge[b], len(first)) for b in table)


@dataclass
class FinSetConfiguration:
    q: RegularQuotient
    coarser: RegularQuotient
    f: AffineMorphism
    seed: int


def random_finset_configuration(inst: FinSet, rng: random.Random, max_size: int, seed: int = 0) -> FinSetConfiguration:
    n = rng.randint(0, max_size)
    A = [x for x in range(n) if rng.random() < 0.5]
    space = DuallyAffineSpace(inst, n, elements=A, check=False)
    table = random_partition(rng, n)
    q = RegularQuotient(space, FinSetMap(n, max(table, default=-1) + 1, table), check=False)
    coarse = coarsen(rng, table)
    q2 = RegularQuotient(space, FinSetMap(n, max(coarse, default=-1) + 1, coarse), check=False)
    z = rng.randint(0 if n == 0 else 1, max_size) if n else 0
    f = FinSetMap(z, n, tuple(rng.randrange(n) for _ in range(z)))
    allowed = [x for x in range(z) if f.table[x] in space.A]
    C = [x for x in allowed if rng.random() < 0.6]
    dom = DuallyAffineSpace(inst, z, elements=C, check=False)
    return FinSetConfiguration(q, q2, AffineMorphism(dom, space, f), seed)


def finset_law_suite(count: int = 1000, max_size: int = 6, seed: int = 0) -> LawReport:
    inst = FinSet()
    report = LawReport()
    for k in range(count):
        rng = random.Random(seed * 1_000_003 + k)
        cfg = random_finset_configuration(inst, rng, max_size, k)
        tag = f"seed {seed}/{k}"
        check_single(cfg.q, report, tag)
        if not leq(cfg.q, cfg.coarser):
            report.violations.append(f"generator error: coarsening is not coarser ({tag})")
        check_monotone(cfg.q, cfg.coarser, report, tag)
        check_inverse_image(cfg.f, cfg.q, report, tag)
    return report


def exhaustive_law_suite(inst, max_size: int) -> LawReport:
    """Every quotient of every space up to ``max_size``, every ordered pair of
    quotients of a space, and every affine map into it paired with every
    quotient."""
    report = LawReport()
    for n in range(max_size + 1):
        for space in spaces(inst, n):
            qs = list(quotients(space))
            for i, q in enumerate(qs):
                check_single(q, report, f"{space!r} quotient {i}")
            for i, q1 in enumerate(qs):
                for j, q2 in enumerate(qs):
                    if leq(q1, q2):
                        check_monotone(q1, q2, report, f"{space!r} quotients {i} <= {j}")
            for f in affine_maps_into(space, range(max_size + 1)):
                for i, q in enumerate(qs):
                    check_inverse_image(f, q, report, f"{f.dom!r} -> {space!r}, quotient {i}")
    return report


# --- census -------------------------------------------------------------------


@dataclass
class Census:
    instance: str
    bound: int
    spaces: int = 0
    quotients: int = 0
    closed: int = 0
    sparse: int = 0
    separating: int = 0
    regularly_separating: int = 0
    complete: int = 0
    per_size: dict = field(default_factory=dict)
    laws: dict | None = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def check_bound(inst, bound: int):
    if isinstance(inst, FinSet):
        limit = FINSET_LIMIT
    else:
        limit = FINMOD_LIMITS.get(inst.modulus)
        if limit is None:
            raise DomainError(f"enumeration over Z/{inst.modulus} is not supported; use Z/2 or Z/3")
    if not 0 <= bound <= limit:
        raise DomainError(f"bound {bound} outside the supported range 0..{limit} for {inst.name}")


def census(inst, bound: int, *, laws: bool = True, enforce_limits: bool = True) -> Census:
    """Counts per carrier size of spaces, quotients and their classes."""
    if enforce_limits:
        check_bound(inst, bound)
    out = Census(inst.name, bound)
    for n in range(bound + 1):
        row = {"spaces": 0, "quotients": 0, "closed": 0, "sparse": 0, "separating": 0, "complete": 0}
        for space in spaces(inst, n):
            row["spaces"] += 1
            verdict = classify_space(space)
            row["separating"] += verdict.separating is True
            out.regularly_separating += verdict.regularly_separating is True
            row["complete"] += verdict.zeta_complete is True
            for q in quotients(space):
                closed, sparse = classify(q)
                row["quotients"] += 1
                row["closed"] += closed
                row["sparse"] += sparse
        out.per_size[n] = row
        out.spaces += row["spaces"]
        out.quotients += row["quotients"]
        out.closed += row["closed"]
        out.sparse += row["sparse"]
        out.separating += row["separating"]
        out.complete += row["complete"]
    if laws:
        out.laws = exhaustive_law_suite(inst, bound).as_dict() if bound <= 3 or not isinstance(inst, FinSet) \
            else finset_law_suite(200, bound).as_dict()
    return out
