"""Dually affine spaces over a base instance.

A space is a base object ``X`` with a subalgebra ``A`` of ``hom_S(X)``
under the induced operations; a morphism ``(X, A) -> (Y, B)`` is a base
morphism ``f`` with ``f . a`` in ``B`` for every ``a`` in ``A``.  The
forgetful functor to the base is topological: every family of base
morphisms has an initial and a final lift, computed here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import CapabilityError, DomainError
from .instances.base import BaseInstance, Copower
from .theory import Homomorphism, Subalgebra, TAlgebra, generate_subalgebra, is_closed


class DuallyAffineSpace:
    """A base object with a structure subalgebra of ``hom_S(X)``."""

    def __init__(self, instance: BaseInstance, X, A: Subalgebra | None = None, *,
                 generators: Iterable | None = None, elements: Iterable | None = None,
                 algebra: TAlgebra | None = None, check: bool = True):
        instance.check_object(X)
        self.instance = instance
        self.X = X
        self.algebra = algebra if algebra is not None else instance.hom_S(X)
        if A is None:
            if elements is not None:
                els = list(elements)
                for x in els:
                    if x not in self.algebra:
                        raise DomainError(f"{x!r} is not a point of {instance.format_object(X)}")
                A = Subalgebra(self.algebra, elements=els, generators=els)
                if check and not is_closed(self.algebra, A.elements):
                    raise DomainError("structure is not closed under the induced operations")
            else:
                A = generate_subalgebra(self.algebra, list(generators or ()))
        self.A = A

    @property
    def is_materialized(self) -> bool:
        return self.A.is_materialized

    def __contains__(self, x) -> bool:
        return x in self.A

    def elements(self) -> list:
        return self.A.sorted_elements()

    def generators(self) -> list:
        """A finite generating set of the structure."""
        if self.A.is_materialized:
            return self.A.sorted_elements()
        return list(self.A.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DuallyAffineSpace):
            return NotImplemented
        return self.instance == other.instance and self.X == other.X and self.A == other.A

    def __hash__(self):
        return hash((repr(self.X), hash(self.A)))

    def __repr__(self) -> str:
        inst = self.instance
        if self.A.is_materialized:
            body = "{" + ", ".join(inst.format_point(x) for x in self.elements()) + "}"
        else:
            body = "<" + ", ".join(inst.format_point(x) for x in self.A.generators) + ">"
        return f"({inst.format_object(self.X)}, {body})"


def morphism_witness(f, dom: DuallyAffineSpace, cod: DuallyAffineSpace):
    """Some ``a`` in ``dom`` with ``f . a`` outside ``cod``, else ``None``.

    For a symbolic structure only its generators are tested; that suffices
    because ``{f} . A`` is the image of a homomorphism and ``B`` is closed.
    """
    inst = dom.instance
    if cod.instance != inst:
        raise DomainError("spaces over different instances")
    if inst.dom(f) != dom.X or inst.cod(f) != cod.X:
        raise DomainError("morphism does not connect the underlying objects")
    for a in dom.generators():
        if inst.apply_point(f, a) not in cod.A:
            return a
    return None


def check_morphism(f, dom: DuallyAffineSpace, cod: DuallyAffineSpace) -> bool:
    return morphism_witness(f, dom, cod) is None


@dataclass(frozen=True)
class AffineMorphism:
    dom: DuallyAffineSpace
    cod: DuallyAffineSpace
    f: Any

    def __post_init__(self):
        a = morphism_witness(self.f, self.dom, self.cod)
        if a is not None:
            raise DomainError(f"f sends {self.dom.instance.format_point(a)} outside the target structure")


def compose(g: AffineMorphism, f: AffineMorphism) -> AffineMorphism:
    if f.cod != g.dom:
        raise DomainError("affine morphisms do not meet")
    return AffineMorphism(f.dom, g.cod, f.dom.instance.compose(g.f, f.f))


def identity(space: DuallyAffineSpace) -> AffineMorphism:
    return AffineMorphism(space, space, space.instance.identity(space.X))


def discrete(instance: BaseInstance, X) -> DuallyAffineSpace:
    """The structure generated by nothing."""
    return DuallyAffineSpace(instance, X, generators=())


def indiscrete(instance: BaseInstance, X) -> DuallyAffineSpace:
    """The whole of ``hom_S(X)``."""
    alg = instance.hom_S(X)
    if alg.is_finite:
        return DuallyAffineSpace(instance, X, elements=alg.elements, algebra=alg, check=False)
    # symbolic: hom(S, n.S) is generated by the coproduct injections
    return DuallyAffineSpace(instance, X, generators=[instance.point(j) for j in instance.copower(X).injections], algebra=alg)


def initial_structure(instance: BaseInstance, X, family: Sequence[tuple[Any, DuallyAffineSpace]]) -> DuallyAffineSpace:
    """The coarsest-from-above lift: ``A = {a : f_i . a in B_i for all i}``."""
    if not family:
        return indiscrete(instance, X)
    alg = instance.hom_S(X)
    if not alg.is_finite:
        raise CapabilityError(f"{instance.name} cannot compute preimage structures")
    for f, space in family:
        if instance.dom(f) != X or instance.cod(f) != space.X:
            raise DomainError("family member does not start at X and end at its space")
    A = [a for a in alg.elements if all(instance.apply_point(f, a) in space.A for f, space in family)]
    result = DuallyAffineSpace(instance, X, elements=A, algebra=alg, check=False)
    assert is_closed(alg, result.A.elements), "intersection of preimages must be a subalgebra"
    return result


def final_structure(instance: BaseInstance, Y, family: Sequence[tuple[Any, DuallyAffineSpace]]) -> DuallyAffineSpace:
    """The lift generated by ``U_i {f_i} . A_i``."""
    alg = instance.hom_S(Y)
    images = []
    for f, space in family:
        if instance.cod(f) != Y or instance.dom(f) != space.X:
            raise DomainError("family member does not start at its space and end at Y")
        images.extend(instance.apply_point(f, a) for a in space.generators())
    if len(family) == 1 and family[0][1].is_materialized and alg.is_finite:
        # the direct image of a subalgebra is already one
        els = set(images)
        assert is_closed(alg, els), "direct image of a subalgebra must be closed"
        return DuallyAffineSpace(instance, Y, elements=els, algebra=alg, check=False)
    return DuallyAffineSpace(instance, Y, generators=images, algebra=alg)


def direct_image(f, space: DuallyAffineSpace) -> DuallyAffineSpace:
    """``(Y, {f} . A)`` for ``f: X -> Y``."""
    return final_structure(space.instance, space.instance.cod(f), [(f, space)])


def s_one(instance: BaseInstance) -> DuallyAffineSpace:
    """``S_1 = (S, <1_S>)``."""
    S = instance.S
    return DuallyAffineSpace(instance, S, generators=[instance.point(instance.identity(S))])


def membership_lemma(space: DuallyAffineSpace, a) -> tuple[bool, bool]:
    """``(a in A, a: S_1 -> (X, A) is a morphism)``; always equal."""
    inst = space.instance
    return a in space.A, check_morphism(inst.point_morphism(space.X, a), s_one(inst), space)


def gamma(f: AffineMorphism) -> Homomorphism:
    """The structure functor on a morphism: ``a |-> f . a`` from ``A`` to ``B``."""
    if not isinstance(f, AffineMorphism):
        raise DomainError("gamma needs a validated affine morphism")
    inst = f.dom.instance
    return Homomorphism(f.dom.A.as_algebra(), f.cod.A.as_algebra(), lambda a: inst.apply_point(f.f, a))


@dataclass(frozen=True)
class CopowerOfSOne:
    """``n . S_1 = (n.S, J_n)`` with ``kappa_n: F(n) -> J_n``, ``i |-> j_i``."""

    space: DuallyAffineSpace
    copower: Copower
    kappa: Homomorphism


def copower_s_one(instance: BaseInstance, n: int) -> CopowerOfSOne:
    cp = instance.copower(n)
    js = [instance.point(j) for j in cp.injections]
    space = DuallyAffineSpace(instance, cp.obj, generators=js)
    kappa = instance.theory.hom_from_free(n, js, space.algebra)
    return CopowerOfSOne(space, cp, kappa)


def universal_factorization(instance: BaseInstance, n: int, target: DuallyAffineSpace, images: Sequence) -> AffineMorphism:
    """The unique ``g: n . S_1 -> (Y, B)`` with ``Gamma(g) . kappa_n = phi``,
    where ``phi`` sends generator ``i`` to ``images[i]`` in ``B``."""
    for b in images:
        if b not in target.A:
            raise DomainError(f"{instance.format_point(b)} is not in the target structure")
    src = copower_s_one(instance, n)
    g = instance.cotuple([instance.point_morphism(target.X, b) for b in images], target.X)
    return AffineMorphism(src.space, target, g)


@dataclass(frozen=True)
class LeftAdjointObject:
    """The free space on a finite algebra ``D`` with its unit ``D -> Gamma``."""

    space: DuallyAffineSpace
    unit: Homomorphism
    quotient: Any  # q: D.S -> Q
    index: dict  # d |-> position of its injection


def left_adjoint_object(instance: BaseInstance, D: TAlgebra) -> LeftAdjointObject:
    """Coequalize ``j_{w(d)}`` with ``[j_{d_i}] . w`` in ``(D.S, J)``.

    ``w`` ranges over the cooperations and ``d`` over tuples from ``D``.
    """
    if not instance.has_coequalizers:
        raise CapabilityError(f"{instance.name} has no coequalizers, so the left adjoint cannot be built")
    if not D.is_finite:
        raise CapabilityError("the left adjoint is built for finite algebras only")
    if D.signature != instance.theory.signature:
        raise DomainError("algebra and instance use different signatures")
    els = list(D.elements)
    index = {d: i for i, d in enumerate(els)}
    cp = instance.copower(len(els))
    J = DuallyAffineSpace(instance, cp.obj, generators=[instance.point(j) for j in cp.injections])
    pairs = []
    for co in instance.cooperations:
        for ds in itertools.product(els, repeat=co.arity):
            lhs = cp.injections[index[D.apply(co.symbol, *ds)]]
            rhs = instance.compose(instance.cotuple([cp.injections[index[d]] for d in ds], cp.obj), co.morphism)
            pairs.append((lhs, rhs))
    q = instance.coequalize(cp.obj, pairs)
    space = direct_image(q, J)
    unit_points = {d: instance.point(instance.compose(q, cp.injections[index[d]])) for d in els}
    unit = Homomorphism(D, space.A.as_algebra(), unit_points.__getitem__)
    return LeftAdjointObject(space, unit, q, index)


def is_isomorphic(f, dom: DuallyAffineSpace, cod: DuallyAffineSpace) -> bool:
    """Whether ``f`` is an isomorphism of spaces: a base iso carrying ``A`` onto ``B``."""
    inst = dom.instance
    if not inst.is_iso(f) or not check_morphism(f, dom, cod):
        return False
    if dom.is_materialized and cod.is_materialized:
        return len(dom.A) == len(cod.A)
    return direct_image(f, dom).A == cod.A


def find_isomorphism(dom: DuallyAffineSpace, cod: DuallyAffineSpace):
    """Search all base morphisms for a space isomorphism; ``None`` if there is none."""
    inst = dom.instance
    for f in inst.enumerate_morphisms(dom.X, cod.X):
        if is_isomorphic(f, dom, cod):
            return f
    return None
