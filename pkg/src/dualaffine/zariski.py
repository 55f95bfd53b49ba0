"""The Zariski dual closure on regular quotients of a space.

For a regular epi ``p: X -> P`` out of a space ``(X, A)`` the closure
``zeta p`` is the regular quotient of ``X`` merging exactly the pairs of
structure points that ``p`` merges, and nothing it is not forced to merge.
It is built as the joint coequalizer of the kernel pairs, or equivalently
as the co-intersection of the single-pair coequalizers ``e_{a,b}``; ``p``
then factors as ``theta p . zeta p``.

Order convention: ``p <= p'`` when ``p'`` factors through ``p``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .affine import AffineMorphism, DuallyAffineSpace, direct_image
from .errors import CapabilityError, DomainError
from .theory import _sort_key


class RegularQuotient:
    """A regular epi ``p`` out of a space, with ``C = {p} . A`` on its codomain."""

    def __init__(self, source: DuallyAffineSpace, p, *, check: bool = True):
        inst = source.instance
        if inst.dom(p) != source.X:
            raise DomainError("quotient map does not start at the space")
        if check and not inst.is_regular_epi(p):
            raise DomainError("quotient map is not a regular epimorphism")
        self.source = source
        self.p = p
        self._target: DuallyAffineSpace | None = None

    @property
    def instance(self):
        return self.source.instance

    @property
    def target(self) -> DuallyAffineSpace:
        if self._target is None:
            self._target = direct_image(self.p, self.source)
        return self._target

    def __repr__(self) -> str:
        return f"RegularQuotient({self.source!r}, {self.p!r})"


class KernelRelation:
    """``ker_A(p)``: pairs of structure points merged by ``p``.

    Stored as the fibres of ``p`` on ``A`` (an equivalence relation is its
    set of blocks), so the relation is never listed pair by pair unless asked.
    ``bound`` is set when the points were drawn from a sample of a symbolic
    structure.
    """

    def __init__(self, elements: Sequence, blocks: Iterable[Sequence], bound: int | None = None):
        self.elements = tuple(elements)
        blocks = [tuple(sorted(b, key=_sort_key)) for b in blocks]
        self.blocks = tuple(sorted(blocks, key=lambda b: _sort_key(b[0])))
        self.bound = bound
        self._block_of = {x: i for i, b in enumerate(self.blocks) for x in b}

    def __contains__(self, pair) -> bool:
        a, b = pair
        i = self._block_of.get(a)
        return i is not None and i == self._block_of.get(b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KernelRelation):
            return NotImplemented
        return set(self.elements) == set(other.elements) and set(map(frozenset, self.blocks)) == set(map(frozenset, other.blocks))

    @property
    def pairs(self) -> list[tuple]:
        """Off-diagonal pairs, each once in ``(min, max)`` order."""
        return [(a, b) for blk in self.blocks for a, b in itertools.combinations(blk, 2)]

    def spanning_pairs(self) -> list[tuple]:
        """``(first, x)`` for each other ``x`` of a block; generates the relation."""
        return [(blk[0], x) for blk in self.blocks for x in blk[1:]]

    def all_pairs(self) -> list[tuple]:
        return [(a, a) for a in self.elements] + self.pairs

    def size(self) -> int:
        return sum(len(b) ** 2 for b in self.blocks)

    def is_diagonal(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def __le__(self, other: "KernelRelation") -> bool:
        return all((blk[0], x) in other for blk in self.blocks for x in blk[1:])

    def is_equivalence(self) -> bool:
        """Blocks are disjoint and cover the elements."""
        listed = [x for b in self.blocks for x in b]
        return len(listed) == len(set(listed)) == len(self.elements) and set(listed) == set(self.elements)

    def is_congruence(self, algebra) -> bool:
        """Compatibility with every operation, tested on all tuples of related pairs."""
        rel = self.all_pairs()
        for symbol, n in algebra.signature.operations:
            for combo in itertools.product(rel, repeat=n):
                lhs = algebra.apply(symbol, *(a for a, _ in combo))
                rhs = algebra.apply(symbol, *(b for _, b in combo))
                if (lhs, rhs) not in self:
                    return False
        return True


def kernel(q: RegularQuotient, *, sample: int | None = None, seed: int = 0) -> KernelRelation:
    """All pairs of structure points with ``p . a == p . b``.

    A symbolic structure needs ``sample``: the relation is then restricted to
    that many seeded structure points and records the bound.
    """
    inst, A = q.instance, q.source.A
    if A.is_materialized:
        els = A.sorted_elements()
        bound = None
    else:
        if sample is None:
            raise CapabilityError("kernel of a symbolic structure needs a sample size")
        alg = A.as_algebra()
        els = sorted(set(alg.sample(random.Random(seed), sample)), key=_sort_key)
        bound = sample
    image: dict[Any, list] = {}
    for a in els:
        image.setdefault(inst.apply_point(q.p, a), []).append(a)
    return KernelRelation(els, image.values(), bound)


def _require_coequalizers(inst):
    if not inst.has_coequalizers:
        raise CapabilityError(
            f"{inst.name} has no coequalizers, so the Zariski dual closure is not available there"
        )


def zeta_map(q: RegularQuotient, method: str = "coequalizer"):
    """The base map ``zeta p: X -> X'``.

    ``method="coequalizer"`` coequalizes ``alpha, beta: ker . S -> X``
    (the cotuples of first and second components); ``"cointersection"``
    takes the co-intersection of the ``e_{a,b}``.  Both run over a generating
    set of pairs of the kernel relation.
    """
    inst = q.instance
    _require_coequalizers(inst)
    X = q.source.X
    # a morphism merging (a, b) and (a, c) merges (b, c), so pairs generating
    # the kernel relation have the same joint coequalizer as all of it
    pairs = kernel(q).spanning_pairs()
    if method == "coequalizer":
        alpha = inst.cotuple([inst.point_morphism(X, a) for a, _ in pairs], X)
        beta = inst.cotuple([inst.point_morphism(X, b) for _, b in pairs], X)
        return inst.coequalize(X, [(alpha, beta)])
    if method == "cointersection":
        singles = [inst.coequalize(X, [(inst.point_morphism(X, a), inst.point_morphism(X, b))]) for a, b in pairs]
        return inst.cointersection(X, singles)
    raise DomainError(f"unknown construction {method!r}")


@dataclass
class ClosureResult:
    quotient: RegularQuotient
    zeta: RegularQuotient
    theta: Any
    is_closed: bool
    is_sparse: bool
    kernel: KernelRelation = field(repr=False)

    @property
    def theta_quotient(self) -> RegularQuotient:
        """``theta p`` as a regular quotient of ``(X', {zeta p} . A)``."""
        return RegularQuotient(self.zeta.target, self.theta)


def zeta(q: RegularQuotient, method: str = "coequalizer") -> ClosureResult:
    inst = q.instance
    z = zeta_map(q, method)
    theta = inst.factor_through(q.p, z)
    if theta is None:
        raise AssertionError("p does not factor through its closure")  # ker_A(p) is merged by p
    ker = kernel(q)
    return ClosureResult(
        quotient=q,
        zeta=RegularQuotient(q.source, z, check=False),
        theta=theta,
        # theta and zeta are regular epis, so each is iso as soon as it is mono
        is_closed=inst.is_mono(theta),
        is_sparse=inst.is_mono(z),
        kernel=ker,
    )


def classify(q: RegularQuotient) -> tuple[bool, bool]:
    """``(is_zeta_closed, is_zeta_sparse)``."""
    r = zeta(q)
    if r.is_sparse != r.kernel.is_diagonal():
        raise AssertionError("sparseness disagrees with the kernel criterion")
    return r.is_closed, r.is_sparse


def leq(p: RegularQuotient, p2: RegularQuotient) -> bool:
    """``p <= p2``: ``p2`` factors through ``p``."""
    if p.source.X != p2.source.X:
        raise DomainError("quotients of different objects")
    return p.instance.factor_through(p2.p, p.p) is not None


def equivalent(p: RegularQuotient, p2: RegularQuotient) -> bool:
    return leq(p, p2) and leq(p2, p)


def inverse_image(f: AffineMorphism, q: RegularQuotient) -> RegularQuotient:
    """``f^-(q)``: the regular-epi part of ``q . f``."""
    inst = f.dom.instance
    if not inst.has_factorizations:
        raise CapabilityError(f"{inst.name} has no (regular epi, mono)-factorizations")
    if q.source != f.cod:
        raise DomainError("quotient does not live on the codomain of f")
    e, _ = inst.factorize(inst.compose(q.p, f.f))
    return RegularQuotient(f.dom, e, check=False)


def identity_quotient(space: DuallyAffineSpace) -> RegularQuotient:
    return RegularQuotient(space, space.instance.identity(space.X), check=False)


# --- closed forms ---------------------------------------------------------------


def closed_form_zeta(q: RegularQuotient):
    """The closure by its textbook description, independent of colimits.

    * finite sets: merge points of ``A`` as ``p`` does and fix ``X \\ A``;
    * modules, empty theory: quotient by the span of ``a - b`` over kernel pairs;
    * modules, module theory: quotient by ``ker p`` intersected with ``A``.
    """
    from .instances.finmod import FinMod
    from .instances.finset import FinSet, FinSetMap

    inst, X, A = q.instance, q.source.X, q.source.A
    if isinstance(inst, FinSet):
        label: dict[Any, int] = {}
        table = []
        for x in range(X):
            key = ("in", inst.apply_point(q.p, x)) if x in A else ("out", x)
            table.append(label.setdefault(key, len(label)))
        return FinSetMap(X, len(label), tuple(table))
    if isinstance(inst, FinMod):
        m = inst.modulus
        els = A.sorted_elements()
        if inst.theory.signature.operations:
            rows = [a for a in els if not any(inst.apply_point(q.p, a))]
        else:
            rows = []
            for a, b in itertools.combinations(els, 2):
                if inst.apply_point(q.p, a) == inst.apply_point(q.p, b):
                    rows.append(tuple((x - y) % m for x, y in zip(a, b)))
        return inst.quotient(X, rows)
    raise CapabilityError(f"no closed form for {inst.name}")


def closed_form_classification(q: RegularQuotient) -> tuple[bool, bool]:
    """``(closed, sparse)`` by the direct criteria.

    Finite sets: sparse iff ``p`` is injective on ``A``; closed iff ``p`` is
    injective on ``X \\ A`` and keeps it apart from ``p(A)``.  Modules with
    the module theory: sparse iff ``ker p`` meets ``A`` trivially, closed iff
    ``ker p`` lies in ``A``.  Modules with the empty theory: sparse iff the
    span ``A^`` of kernel differences is zero, closed iff ``ker p`` lies in it.
    """
    from .instances.finmod import FinMod
    from .instances.finset import FinSet

    inst, X, A = q.instance, q.source.X, q.source.A
    if isinstance(inst, FinSet):
        inside = [inst.apply_point(q.p, a) for a in range(X) if a in A]
        outside = [inst.apply_point(q.p, x) for x in range(X) if x not in A]
        sparse = len(set(inside)) == len(inside)
        closed = len(set(outside)) == len(outside) and not set(outside) & set(inside)
        return closed, sparse
    if isinstance(inst, FinMod):
        ker = {x for x in inst.points(X) if not any(inst.apply_point(q.p, x))}
        if inst.theory.signature.operations:
            meet = {x for x in ker if x in A}
            return meet == ker, len(meet) == 1
        z = closed_form_zeta(q)
        hat = {x for x in ker if not any(z(x))}
        return ker <= hat, len(hat) == 1
    raise CapabilityError(f"no closed-form classification for {inst.name}")


# --- laws --------------------------------------------------------------------


@dataclass
class LawReport:
    quotients: int = 0
    pairs: int = 0
    morphisms: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "quotients": self.quotients, "ordered_pairs": self.pairs, "morphisms": self.morphisms,
            "violations": list(self.violations), "ok": self.ok,
        }


def check_single(q: RegularQuotient, report: LawReport, label: str = "") -> ClosureResult:
    r = zeta(q)
    zz = zeta(r.zeta)
    tag = label or repr(q)
    report.quotients += 1
    if not leq(r.zeta, q):
        report.violations.append(f"rule 1 (zeta p <= p) fails for {tag}")
    if not leq(r.zeta, zz.zeta):
        report.violations.append(f"rule 3 (zeta p <= zeta zeta p) fails for {tag}")
    if not equivalent(zz.zeta, r.zeta):
        report.violations.append(f"idempotence fails for {tag}")
    if not zz.is_closed:
        report.violations.append(f"zeta p is not closed for {tag}")
    theta_closure = zeta(r.theta_quotient)
    if not theta_closure.is_sparse:
        report.violations.append(f"theta p is not sparse for {tag}")
    return r


def check_monotone(q1: RegularQuotient, q2: RegularQuotient, report: LawReport, label: str = ""):
    """Rule 2 for a pair with ``q1 <= q2`` (checked by the caller)."""
    report.pairs += 1
    if not leq(zeta(q1).zeta, zeta(q2).zeta):
        report.violations.append(f"rule 2 (monotone) fails for {label or (q1, q2)}")


def check_inverse_image(f: AffineMorphism, q: RegularQuotient, report: LawReport, label: str = ""):
    """Rule 4: ``zeta(f^-(q)) <= f^-(zeta q)``."""
    report.morphisms += 1
    lhs = zeta(inverse_image(f, q)).zeta
    z = zeta(q).zeta
    rhs = inverse_image(f, RegularQuotient(q.source, z.p, check=False))
    if not leq(lhs, rhs):
        report.violations.append(f"rule 4 (inverse images) fails for {label or (f, q)}")


def verify_laws(
    quotients: Iterable[RegularQuotient] = (),
    pairs: Iterable[tuple[RegularQuotient, RegularQuotient]] = (),
    morphisms: Iterable[tuple[AffineMorphism, RegularQuotient]] = (),
) -> LawReport:
    """Run every closure law on the given configurations.

    ``pairs`` with ``q1 <= q2`` feed the monotonicity rule; pairs that are
    not ordered are skipped.
    """
    report = LawReport()
    for q in quotients:
        check_single(q, report)
    for q1, q2 in pairs:
        if leq(q1, q2):
            check_monotone(q1, q2, report)
    for f, q in morphisms:
        check_inverse_image(f, q, report)
    return report
