"""Free groups of finite rank: reduced words and Stallings foldings.

A word over the free group ``F_n`` is a tuple of letters ``(generator,
sign)`` with ``sign`` in ``{+1, -1}``.  :class:`Word` values are always
freely reduced, so equality of words is equality of group elements.

Generators print as ``a b c d f g ...``; the letter ``e`` is skipped because
``e`` spells the empty word.  Generators past ``z`` print as ``x25``,
``x26`` and so on.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

Letter = tuple[int, int]

_ALPHABET = "abcdfghijklmnopqrstuvwxyz"
_TOKEN = re.compile(r"^(?:([a-df-z])|x(\d+))(\^-1)?$")


def letter_name(g: int) -> str:
    return _ALPHABET[g] if g < len(_ALPHABET) else f"x{g}"


def _letter_index(name: str) -> int | None:
    m = _TOKEN.match(name)
    if m is None:
        return None
    return _ALPHABET.index(m.group(1)) if m.group(1) else int(m.group(2))


def _reduce_letters(raw: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, s in raw:
        if s not in (1, -1):
            raise DomainError(f"letter sign must be +1 or -1, got {s}")
        if g < 0:
            raise DomainError(f"negative generator index {g}")
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A reduced word in the free group of the given rank."""

    rank: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = _reduce_letters(self.letters)
        if any(g >= self.rank for g, _ in letters):
            raise DomainError(f"word uses a generator outside F_{self.rank}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank)

    @classmethod
    def generator(cls, rank: int, g: int, sign: int = 1) -> "Word":
        return cls(rank, ((g, sign),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert(self)
        out = Word.identity(self.rank)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def sort_key(self) -> tuple:
        # shortlex with a < a^-1 < b < b^-1 < ...
        return len(self.letters), tuple(2 * g + (s < 0) for g, s in self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def substitute(self, images: Sequence["Word"], rank: int | None = None) -> "Word":
        """Image under the homomorphism sending generator ``i`` to ``images[i]``.

        ``rank`` names the target free group; it is only needed when
        ``images`` is empty.
        """
        if len(images) != self.rank:
            raise DomainError(f"need {self.rank} images, got {len(images)}")
        if rank is None:
            if not images:
                raise DomainError("substitution needs a target rank")
            rank = images[0].rank
        raw: list[Letter] = []
        for g, s in self.letters:
            img = images[g]
            if img.rank != rank:
                raise DomainError("substitution images live in different free groups")
            raw.extend(img.letters if s > 0 else invert(img).letters)
        return Word(rank, tuple(raw))

    def __str__(self) -> str:
        return format_word(self)


def reduce(raw: Iterable[Letter], rank: int | None = None) -> Word:
    """Freely reduce a letter sequence.

    The rank defaults to one more than the largest generator index.
    """
    raw = list(raw)
    if rank is None:
        rank = max((g for g, _ in raw), default=-1) + 1
    return Word(rank, tuple(raw))


def concat(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise DomainError(f"cannot multiply words of F_{u.rank} and F_{v.rank}")
    i = 0
    lu = len(u.letters)
    while i < lu and i < len(v.letters) and u.letters[lu - 1 - i] == (v.letters[i][0], -v.letters[i][1]):
        i += 1
    return Word(u.rank, u.letters[: lu - i] + v.letters[i:])


def invert(w: Word) -> Word:
    return Word(w.rank, tuple((g, -s) for g, s in reversed(w.letters)))


def format_word(w: Word) -> str:
    if not w.letters:
        return "e"
    return " ".join(letter_name(g) + ("^-1" if s < 0 else "") for g, s in w.letters)


def parse_word(text: str, rank: int) -> Word:
    """Parse ``"a b^-1 a"`` style syntax; ``"e"`` is the empty word."""
    tokens = text.split()
    if tokens == ["e"] or not tokens:
        return Word.identity(rank)
    raw = []
    for pos, tok in enumerate(tokens):
        g = _letter_index(tok)
        if g is None:
            raise DomainError(f"bad letter {tok!r} at token {pos} of {text!r}")
        if g >= rank:
            raise DomainError(f"letter {tok!r} at token {pos} is outside F_{rank}")
        raw.append((g, -1 if tok.endswith("^-1") else 1))
    return Word(rank, tuple(raw))


def all_words(rank: int, max_length: int) -> Iterator[Word]:
    """Every reduced word of length at most ``max_length``, in shortlex order."""
    level = [()]
    letters = [(g, s) for g in range(rank) for s in (1, -1)]
    for _ in range(max_length + 1):
        nxt = []
        for w in level:
            yield Word(rank, w)
            for x in letters:
                if not w or w[-1] != (x[0], -x[1]):
                    nxt.append(w + (x,))
        level = nxt


def random_word(rng: random.Random, rank: int, max_length: int) -> Word:
    """A uniformly chosen length in ``[0, max_length]``, then random letters."""
    n = rng.randint(0, max_length)
    raw: list[Letter] = []
    while len(raw) < n:
        x = (rng.randrange(rank), rng.choice((1, -1)))
        if raw and raw[-1] == (x[0], -x[1]):
            continue
        raw.append(x)
    return Word(rank, tuple(raw))


# --- Stallings foldings -----------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> int:
        x, y = self.find(x), self.find(y)
        if x != y:
            # smaller index survives so the base state (0) is always a root
            x, y = min(x, y), max(x, y)
            self.parent[y] = x
        return x


@dataclass(frozen=True)
class StallingsGraph:
    """A folded core graph with base state 0.

    ``edges`` holds positively oriented edges ``(source, generator,
    target)``; traversing an edge backwards reads the inverse letter.  States
    are numbered canonically (breadth first from the base, letters in
    shortlex order), so two graphs for the same subgroup compare equal.
    """

    rank: int
    n_states: int
    edges: frozenset[tuple[int, int, int]]
    _delta: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        delta = {}
        for u, g, v in self.edges:
            delta[(u, g, 1)] = v
            delta[(v, g, -1)] = u
        object.__setattr__(self, "_delta", delta)

    def step(self, state: int, letter: Letter) -> int | None:
        return self._delta.get((state, letter[0], letter[1]))

    def member(self, w: Word) -> bool:
        return member(self, w)

    def subgroup_rank(self) -> int:
        return len(self.edges) - self.n_states + 1

    def is_full(self) -> bool:
        """Whether the graph accepts all of ``F_rank``."""
        return self.n_states == 1 and len(self.edges) == self.rank

    def spanning_tree_paths(self) -> list[Word]:
        paths: list[Word | None] = [None] * self.n_states
        paths[0] = Word.identity(self.rank)
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for g in range(self.rank):
                for s in (1, -1):
                    v = self.step(u, (g, s))
                    if v is not None and paths[v] is None:
                        paths[v] = paths[u] * Word.generator(self.rank, g, s)
                        queue.append(v)
        return paths  # type: ignore[return-value]

    def _tree_edges(self) -> set[tuple[int, int, int]]:
        seen = {0}
        tree = set()
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for g in range(self.rank):
                for s in (1, -1):
                    v = self.step(u, (g, s))
                    if v is not None and v not in seen:
                        seen.add(v)
                        tree.add((u, g, v) if s > 0 else (v, g, u))
                        queue.append(v)
        return tree

    def free_basis(self) -> list[Word]:
        """A free basis of the accepted subgroup, one element per non-tree edge."""
        paths = self.spanning_tree_paths()
        tree = self._tree_edges()
        return [
            paths[u] * Word.generator(self.rank, g) * invert(paths[v])
            for (u, g, v) in sorted(self.edges - tree, key=lambda e: (e[1], e[0], e[2]))
        ]

    def express(self, w: Word) -> Word:
        """Write a member of the subgroup as a word in :meth:`free_basis`."""
        tree = self._tree_edges()
        index = {e: i for i, e in enumerate(sorted(self.edges - tree, key=lambda e: (e[1], e[0], e[2])))}
        state = 0
        raw: list[Letter] = []
        for g, s in w.letters:
            nxt = self.step(state, (g, s))
            if nxt is None:
                raise DomainError(f"{format_word(w)} is not in the subgroup")
            edge = (state, g, nxt) if s > 0 else (nxt, g, state)
            if edge in index:
                raw.append((index[edge], s))
            state = nxt
        if state != 0:
            raise DomainError(f"{format_word(w)} is not in the subgroup")
        return Word(len(index), tuple(raw))


def member(graph: StallingsGraph, w: Word) -> bool:
    """Whether ``w`` reads a closed path at the base state."""
    if w.rank != graph.rank:
        raise DomainError(f"word of F_{w.rank} tested against a subgroup of F_{graph.rank}")
    state = 0
    for x in w.letters:
        state = graph.step(state, x)
        if state is None:
            return False
    return state == 0


def fold(generators: Sequence[Word], rank: int | None = None, *, order_seed: int | None = None) -> StallingsGraph:
    """Fold the bouquet of petals spelled by ``generators``.

    ``order_seed`` shuffles the order in which petal edges are inserted; the
    folded graph does not depend on it.
    """
    if rank is None:
        if not generators:
            raise DomainError("rank is required for an empty generator list")
        rank = generators[0].rank
    if any(w.rank != rank for w in generators):
        raise DomainError("generators live in different free groups")

    uf = _UnionFind()
    base = uf.add()
    petal_edges: list[tuple[int, int, int]] = []
    for w in generators:
        if w.is_identity():
            continue
        cur = base
        for k, (g, s) in enumerate(w.letters):
            nxt = base if k == len(w) - 1 else uf.add()
            petal_edges.append((cur, g, nxt) if s > 0 else (nxt, g, cur))
            cur = nxt
    if order_seed is not None:
        random.Random(order_seed).shuffle(petal_edges)

    # adjacency per root: (generator, sign) -> neighbour (any member of its class)
    adj: dict[int, dict[Letter, int]] = {i: {} for i in range(len(uf.parent))}
    pending: list[tuple[int, int]] = []

    def attach(u: int, label: Letter, v: int):
        ru = uf.find(u)
        old = adj[ru].get(label)
        if old is None:
            adj[ru][label] = v
        elif uf.find(old) != uf.find(v):
            pending.append((old, v))

    def drain():
        while pending:
            x, y = pending.pop()
            rx, ry = uf.find(x), uf.find(y)
            if rx == ry:
                continue
            keep = uf.union(rx, ry)
            gone = ry if keep == rx else rx
            for label, v in adj.pop(gone).items():
                attach(keep, label, v)

    for u, g, v in petal_edges:
        attach(u, (g, 1), v)
        attach(v, (g, -1), u)
        drain()

    edges = set()
    for r, out in adj.items():
        for (g, s), v in out.items():
            if s > 0:
                edges.add((uf.find(r), g, uf.find(v)))
    return _trim_and_relabel(rank, base, edges)


def _trim_and_relabel(rank: int, base: int, edges: set[tuple[int, int, int]]) -> StallingsGraph:
    edges = set(edges)
    while True:
        degree: dict[int, int] = {}
        for u, _, v in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        leaves = {x for x, d in degree.items() if d == 1 and x != base}
        if not leaves:
            break
        edges = {e for e in edges if e[0] not in leaves and e[2] not in leaves}

    delta: dict[tuple[int, Letter], int] = {}
    for u, g, v in edges:
        delta[(u, (g, 1))] = v
        delta[(v, (g, -1))] = u
    names = {base: 0}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for g in range(rank):
            for s in (1, -1):
                v = delta.get((u, (g, s)))
                if v is not None and v not in names:
                    names[v] = len(names)
                    queue.append(v)
    relabelled = frozenset((names[u], g, names[v]) for u, g, v in edges)
    return StallingsGraph(rank, len(names), relabelled)
