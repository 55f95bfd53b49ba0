"""Roses ``n * S^1`` in the pointed homotopy category, modelled by free groups.

The rose with ``n`` petals is the object ``n``; its fundamental group is
``F_n`` and a map ``n -> m`` is, up to homotopy, the tuple of loops the
petals are sent to, i.e. ``n`` reduced words over ``F_m``.  Composition is
substitution.  ``S = S^1`` is the object ``1`` and a point ``S^1 -> X`` is a
single word, so ``hom_S(n) = F_n``.

The cooperations are

* ``mul`` (concatenation) ``S^1 -> S^1 v S^1``, the loop ``a b``;
* ``inv`` (twist) ``S^1 -> S^1``, the loop ``a^-1``;
* ``one`` ``S^1 -> 0``, the constant loop;

inducing the group structure of ``F_n``.  There are no coequalizers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .. import freegroup
from ..errors import CapabilityError, DomainError
from ..freegroup import Word
from ..theory import GROUP, free_group_algebra
from .base import BaseInstance, Cooperation, Copower

SECTION_SEARCH_LIMIT = 20000


@dataclass(frozen=True)
class RoseMap:
    dom: int
    cod: int
    words: tuple[Word, ...]

    def __post_init__(self):
        words = tuple(self.words)
        if len(words) != self.dom:
            raise DomainError(f"a map out of rose {self.dom} needs {self.dom} loops, got {len(words)}")
        for w in words:
            if not isinstance(w, Word) or w.rank != self.cod:
                raise DomainError(f"loop {w} does not live in F_{self.cod}")
        object.__setattr__(self, "words", words)

    def __call__(self, w: Word) -> Word:
        return w.substitute(self.words, rank=self.cod)


class Rose(BaseInstance):
    name = "rose"
    has_coequalizers = False
    has_factorizations = True
    hom_S_finite = False
    theory = GROUP
    S = 1

    def check_object(self, X):
        if not isinstance(X, int) or X < 0:
            raise DomainError(f"rose objects are petal counts, got {X!r}")

    def map(self, dom: int, cod: int, words: Sequence[Word | str]) -> RoseMap:
        return RoseMap(dom, cod, tuple(freegroup.parse_word(w, cod) if isinstance(w, str) else w for w in words))

    def identity(self, X):
        return RoseMap(X, X, tuple(Word.generator(X, i) for i in range(X)))

    def compose(self, g: RoseMap, f: RoseMap) -> RoseMap:
        if f.cod != g.dom:
            raise DomainError(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
        return RoseMap(f.dom, g.cod, tuple(g(w) for w in f.words))

    def copower(self, n: int) -> Copower:
        return Copower(n, n, tuple(RoseMap(1, n, (Word.generator(n, i),)) for i in range(n)))

    def cotuple(self, points, Y):
        for a in points:
            if a.dom != 1 or a.cod != Y:
                raise DomainError(f"cotuple components must be loops in rose {Y}")
        return RoseMap(len(points), Y, tuple(a.words[0] for a in points))

    @property
    def cooperations(self):
        return [
            Cooperation("mul", 2, RoseMap(1, 2, (Word(2, ((0, 1), (1, 1))),))),
            Cooperation("inv", 1, RoseMap(1, 1, (Word(1, ((0, -1),)),))),
            Cooperation("one", 0, RoseMap(1, 0, (Word.identity(0),))),
        ]

    def point(self, a):
        if a.dom != 1:
            raise DomainError("a point is a loop, a map out of rose 1")
        return a.words[0]

    def point_morphism(self, X, x):
        return RoseMap(1, X, (x,))

    def apply_point(self, f, x):
        return f(x)

    def is_point(self, X, x) -> bool:
        return isinstance(x, Word) and x.rank == X

    def hom_S(self, X):
        self.check_object(X)
        return free_group_algebra(X, self.induced_operations(X), name=f"pi_1(rose {X})")

    def image_graph(self, f: RoseMap) -> freegroup.StallingsGraph:
        return freegroup.fold(list(f.words), f.cod)

    def is_epi(self, f) -> bool:
        return self.image_graph(f).is_full()

    def is_mono(self, f) -> bool:
        # free groups are Hopfian: F_n -> H is injective iff rank H = n
        return self.image_graph(f).subgroup_rank() == f.dom

    def section(self, f: RoseMap, limit: int = SECTION_SEARCH_LIMIT) -> RoseMap | None:
        """A map ``s`` with ``f . s = id``, searched breadth first over
        products of the loops of ``f``; ``None`` when the search gives up."""
        targets = {Word.generator(f.cod, j): j for j in range(f.cod)}
        found: dict[int, Word] = {}
        steps = []
        for i, w in enumerate(f.words):
            steps.append((w, Word.generator(f.dom, i)))
            steps.append((freegroup.invert(w), Word.generator(f.dom, i, -1)))
        seen = {Word.identity(f.cod): Word.identity(f.dom)}
        queue = deque([Word.identity(f.cod)])
        while queue and len(found) < f.cod and len(seen) < limit:
            img = queue.popleft()
            pre = seen[img]
            for w, g in steps:
                nxt = img * w
                if nxt not in seen:
                    seen[nxt] = pre * g
                    queue.append(nxt)
                    if nxt in targets:
                        found.setdefault(targets[nxt], seen[nxt])
        if len(found) < f.cod:
            return None
        return RoseMap(f.cod, f.dom, tuple(found[j] for j in range(f.cod)))

    def is_regular_epi(self, f) -> bool:
        """Certified through a splitting.

        Raises :class:`CapabilityError` when ``f`` is epi but no section was
        found within the search limit.
        """
        if not self.is_epi(f):
            return False
        if self.section(f) is None:
            raise CapabilityError("epimorphism of roses without a section found by the bounded search")
        return True

    def factorize(self, f):
        graph = self.image_graph(f)
        basis = graph.free_basis()
        r = len(basis)
        e = RoseMap(f.dom, r, tuple(graph.express(w) if r else Word.identity(0) for w in f.words))
        m = RoseMap(r, f.cod, tuple(basis))
        return e, m

    def factor_through(self, f, p):
        if f.dom != p.dom:
            raise DomainError("factor_through needs maps with a common domain")
        s = self.section(p)
        if s is None:
            raise CapabilityError("cannot factor through a quotient without a known section")
        h = self.compose(f, s)
        return h if self.compose(h, p) == f else None

    def format_object(self, X) -> str:
        return f"rose:{X}"

    def format_point(self, x) -> str:
        return freegroup.format_word(x)
