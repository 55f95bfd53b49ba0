"""Separation and completeness through the counit ``eps: A . S -> X``.

``eps`` is the cotuple of the structure points, ``eps . j_a = a``.  A space
is separating when ``eps`` is epi, regularly separating when it is a regular
epi, and zeta-complete when it is a zeta-closed regular epi of
``(A . S, J_A)`` with ``J_A`` generated by the injections.

Over the rose instance the structure is infinite, so verdicts there are
either exact (when a finite certificate exists) or ``"evidence-only"``
together with the sampling bound used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .affine import AffineMorphism, DuallyAffineSpace, check_morphism, copower_s_one, direct_image
from .errors import CapabilityError
from .freegroup import random_word
from .instances.base import Copower
from .instances.rose import Rose
from .zariski import RegularQuotient, zeta

EVIDENCE = "evidence-only"
DEFAULT_SAMPLES = 200
DEFAULT_MAX_LENGTH = 12


@dataclass
class CounitDatum:
    space: DuallyAffineSpace
    index: tuple  # the a in A, in injection order
    copower: Copower
    eps: Any
    J: DuallyAffineSpace  # (A . S, J_A)

    def injection(self, a):
        return self.copower.injections[self.index.index(a)]


def counit(space: DuallyAffineSpace, *, check: bool = True) -> CounitDatum:
    if not space.is_materialized:
        raise CapabilityError("the counit needs a finite structure; the rose instance samples a sub-copower instead")
    inst = space.instance
    index = tuple(space.elements())
    cp = inst.copower(len(index))
    eps = inst.cotuple([inst.point_morphism(space.X, a) for a in index], space.X)
    J = DuallyAffineSpace(inst, cp.obj, generators=[inst.point(j) for j in cp.injections])
    datum = CounitDatum(space, index, cp, eps, J)
    if check:
        for a, j in zip(index, cp.injections):
            assert inst.point(inst.compose(eps, j)) == a
        assert direct_image(eps, J).A == space.A, "the counit must be final"
    return datum


@dataclass
class CompletenessVerdict:
    separating: bool | str
    regularly_separating: bool | str
    zeta_complete: bool | str
    mode: str = "exact"
    sampling_bound: dict | None = None
    witness: Any = None

    def as_dict(self) -> dict:
        return {
            "separating": self.separating,
            "regularly_separating": self.regularly_separating,
            "zeta_complete": self.zeta_complete,
            "mode": self.mode,
            "sampling_bound": self.sampling_bound,
            "witness": self.witness,
        }


def _rose_full(space: DuallyAffineSpace) -> bool:
    return space.A.graph is not None and space.A.graph.is_full()


def is_separating(space: DuallyAffineSpace) -> bool:
    inst = space.instance
    if isinstance(inst, Rose):
        # the image of eps is the subgroup A itself
        return _rose_full(space)
    return inst.is_epi(counit(space).eps)


def is_regularly_separating(space: DuallyAffineSpace) -> bool:
    inst = space.instance
    if isinstance(inst, Rose):
        # when A = F_n, eps is split by the injections of the generators
        return _rose_full(space)
    return inst.is_regular_epi(counit(space).eps)


def counit_quotient(space: DuallyAffineSpace) -> RegularQuotient:
    datum = counit(space)
    return RegularQuotient(datum.J, datum.eps)


def is_zeta_complete(space: DuallyAffineSpace, *, shortcut: bool = False) -> bool | str:
    """Finite instances: the general classifier (or, with ``shortcut`` and
    the empty theory, whether ``eps`` is an iso).  Roses: ``False`` if not
    separating, else :data:`EVIDENCE`."""
    inst = space.instance
    if isinstance(inst, Rose):
        return EVIDENCE if _rose_full(space) else False
    datum = counit(space)
    if not inst.is_regular_epi(datum.eps):
        return False
    if shortcut and not inst.theory.signature.operations:
        return inst.is_iso(datum.eps)
    return zeta(RegularQuotient(datum.J, datum.eps, check=False)).is_closed


def classify_space(space: DuallyAffineSpace, *, samples: int = DEFAULT_SAMPLES,
                   max_length: int = DEFAULT_MAX_LENGTH, seed: int = 0) -> CompletenessVerdict:
    inst = space.instance
    if isinstance(inst, Rose):
        sep = is_separating(space)
        if not sep:
            missing = [str(w) for w in _missing_generators(space)]
            return CompletenessVerdict(False, False, False, witness={"generators_outside_A": missing})
        report = verify_copower_theorem(inst, space.X, samples=samples, max_length=max_length, seed=seed) \
            if space == copower_s_one(inst, space.X).space else None
        return CompletenessVerdict(
            True, True, EVIDENCE if report is None or report.ok else False,
            mode=EVIDENCE, sampling_bound={"samples": samples, "max_length": max_length, "seed": seed},
            witness=None if report is None else report.failures,
        )
    datum = counit(space)
    sep = inst.is_epi(datum.eps)
    reg = inst.is_regular_epi(datum.eps)
    comp = is_zeta_complete(space) if reg else False
    witness = None
    if not sep:
        witness = {"outside_image": _first_outside_image(space, datum)}
    elif not comp:
        witness = {"reason": "theta of the counit is not an isomorphism"}
    return CompletenessVerdict(sep, reg, comp, witness=witness)


def _missing_generators(space):
    return [w for w in _generators(space) if w not in space.A]


def _generators(space):
    inst = space.instance
    return [inst.point(j) for j in inst.copower(space.X).injections]


def _first_outside_image(space, datum):
    inst = space.instance
    try:
        points = inst.points(space.X)
    except CapabilityError:
        return None
    image = {inst.apply_point(datum.eps, x) for x in inst.points(datum.copower.obj)}
    for x in points:
        if x not in image:
            return inst.format_point(x)
    return None


# --- the copower theorem --------------------------------------------------------


@dataclass
class TheoremReport:
    instance: str
    n: int
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    classifier: bool | str | None = None
    mode: str = "exact"
    sampling_bound: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.failures and self.classifier in (True, EVIDENCE)

    def as_dict(self) -> dict:
        return {
            "instance": self.instance, "n": self.n, "checked": self.checked,
            "failures": list(self.failures), "classifier": self.classifier,
            "mode": self.mode, "sampling_bound": self.sampling_bound, "ok": self.ok,
        }


def verify_copower_theorem(instance, n: int, *, samples: int = DEFAULT_SAMPLES,
                           max_length: int = DEFAULT_MAX_LENGTH, seed: int = 0) -> TheoremReport:
    """Check the splitting of ``eps`` for ``n . S_1`` and the identity
    ``eps . (d . eps . j_a) = eps . j_a``.

    ``d: n.S -> A.S`` is the map with ``d . h_i = j_{h_i}``.  For roses
    ``A . S`` is replaced by the sub-copower on the generators and ``samples``
    seeded words of length at most ``max_length``.
    """
    inst = instance
    cs = copower_s_one(inst, n)
    X, hs = cs.space.X, [inst.point(h) for h in cs.copower.injections]
    report = TheoremReport(inst.name, n)
    if isinstance(inst, Rose):
        rng = random.Random(seed)
        sampled = [random_word(rng, n, max_length) for _ in range(samples)] if n else []
        index = tuple(dict.fromkeys(hs + sampled))
        report.mode = EVIDENCE
        report.sampling_bound = {"samples": samples, "max_length": max_length, "seed": seed, "distinct": len(index)}
        cp = inst.copower(len(index))
        eps = inst.cotuple([inst.point_morphism(X, a) for a in index], X)
        J = DuallyAffineSpace(inst, cp.obj, generators=[inst.point(j) for j in cp.injections])
        check_points = sampled
    else:
        datum = counit(cs.space)
        index, cp, eps, J = datum.index, datum.copower, datum.eps, datum.J
        check_points = list(index)
    j = {a: cp.injections[i] for i, a in enumerate(index)}
    d = inst.cotuple([j[h] for h in hs], cp.obj)

    for i, h in enumerate(hs):
        if inst.compose(d, cs.copower.injections[i]) != j[h]:
            report.failures.append(f"d . h_{i} != j_h{i}")
    if inst.compose(eps, d) != inst.identity(X):
        report.failures.append("eps . d is not the identity")
    for a in check_points:
        report.checked += 1
        da = inst.apply_point(d, a)
        if da not in J.A:
            report.failures.append(f"d . {inst.format_point(a)} is outside J_A")
        lhs = inst.apply_point(eps, inst.apply_point(d, inst.apply_point(eps, inst.point(j[a]))))
        rhs = inst.apply_point(eps, inst.point(j[a]))
        if lhs != rhs or rhs != a:
            report.failures.append(f"eps . d . eps . j_a != eps . j_a for a = {inst.format_point(a)}")
    if isinstance(inst, Rose):
        report.classifier = EVIDENCE if not report.failures else False
    else:
        report.classifier = is_zeta_complete(cs.space)
    return report


# --- projectivity --------------------------------------------------------------


@dataclass
class ProjectivityReport:
    tested: int = 0
    lifted: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def find_lift(space: DuallyAffineSpace, h: AffineMorphism, g):
    """A morphism ``l: space -> h.dom`` with ``h . l == g``, searched in
    enumeration order; ``None`` if there is none."""
    inst = space.instance
    for l in inst.enumerate_morphisms(space.X, h.dom.X):
        if inst.compose(h.f, l) == g and check_morphism(l, space, h.dom):
            return l
    return None


def check_projectivity(space: DuallyAffineSpace, against: Sequence[AffineMorphism]) -> ProjectivityReport:
    """For each ``h: (Y, B) -> (Z, C)`` and each morphism ``g: space -> (Z, C)``
    look for a lift through ``h``."""
    inst = space.instance
    report = ProjectivityReport()
    for k, h in enumerate(against):
        for g in inst.enumerate_morphisms(space.X, h.cod.X):
            if not check_morphism(g, space, h.cod):
                continue
            report.tested += 1
            if find_lift(space, h, g) is None:
                report.failures.append(f"no lift of {g} through test map {k}")
            else:
                report.lifted += 1
    return report
