"""Floyd-Warshall transitive closure, plain and annotated with exclusion sets.

Vertices are numbered from 1, as in the proof frames.  The annotated
closure works over a *universe* of candidate axiom links; each edge carries
the set of candidates whose selection would remove it, and each closure
entry records the candidates whose selection would remove every path.

Exclusion sets are stored as packed bit rows (one ``uint64`` word per 64
candidates) so that union and intersection are word-wise ``|`` and ``&``.
They are handed back to callers as sorted tuples of links.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

Link = tuple[int, int]
ExclusionSet = tuple  # sorted tuple of Link

__all__ = [
    "Digraph",
    "AnnotatedGraph",
    "BoolMatrix",
    "ClosureMatrix",
    "bool_closure",
    "excl_closure",
    "exclusion_set",
]


def exclusion_set(links: Iterable[Link]) -> ExclusionSet:
    return tuple(sorted(set(links)))


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        for a, b in self.edges:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge {a}->{b} outside 1..{self.n}")

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for a, b in sorted(self.edges):
            succ[a].append(b)
        return succ

    def adjacency(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.edges:
            m[a - 1, b - 1] = True
        return m


@dataclass(frozen=True)
class AnnotatedGraph:
    """Directed graph whose edges carry exclusion sets drawn from ``universe``."""

    n: int
    edges: Mapping[Link, ExclusionSet]
    universe: tuple = ()

    def __post_init__(self):
        universe = exclusion_set(self.universe)
        known = set(universe)
        edges = {}
        for (a, b), excl in self.edges.items():
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge {a}->{b} outside 1..{self.n}")
            excl = exclusion_set(excl)
            if not known.issuperset(excl):
                raise ValueError(f"exclusion set of {a}->{b} leaves the universe")
            edges[a, b] = excl
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "universe", universe)

    def digraph(self) -> Digraph:
        return Digraph(self.n, frozenset(self.edges))


@dataclass(frozen=True, eq=False)
class BoolMatrix:
    """Reachability by non-empty paths; ``matrix[a-1, b-1]`` for vertices a, b."""

    matrix: np.ndarray

    def reach(self, a: int, b: int) -> bool:
        return bool(self.matrix[a - 1, b - 1])

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other):
        return isinstance(other, BoolMatrix) and np.array_equal(self.matrix, other.matrix)


def bool_closure(graph: Digraph) -> BoolMatrix:
    reach = graph.adjacency()
    for c in range(graph.n):
        # path(a,b) |= path(a,c) & path(c,b), one pivot at a time
        reach |= np.outer(reach[:, c], reach[c, :])
    return BoolMatrix(reach)


@dataclass(frozen=True, eq=False)
class ClosureMatrix:
    reach: np.ndarray
    bits: np.ndarray
    universe: tuple
    _index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self._index:
            self._index.update({link: i for i, link in enumerate(self.universe)})

    @property
    def n(self) -> int:
        return self.reach.shape[0]

    def has_path(self, a: int, b: int) -> bool:
        return bool(self.reach[a - 1, b - 1])

    def entry(self, a: int, b: int) -> Optional[ExclusionSet]:
        """Exclusion set of the pair, or ``None`` when there is no path."""
        if not self.reach[a - 1, b - 1]:
            return None
        return self._decode(self.bits[a - 1, b - 1])

    def excludes(self, a: int, b: int, link: Link) -> bool:
        """True when a path a->b exists and choosing ``link`` destroys all of them."""
        if not self.reach[a - 1, b - 1]:
            return False
        i = self._index[link]
        return bool((int(self.bits[a - 1, b - 1, i >> 6]) >> (i & 63)) & 1)

    def _decode(self, words: np.ndarray) -> ExclusionSet:
        out = []
        for w, word in enumerate(words.tolist()):
            while word:
                low = word & -word
                i = (w << 6) + low.bit_length() - 1
                if i < len(self.universe):
                    out.append(self.universe[i])
                word ^= low
        return tuple(out)

    def to_bool(self) -> BoolMatrix:
        return BoolMatrix(self.reach.copy())

    def __eq__(self, other):
        if not isinstance(other, ClosureMatrix) or self.universe != other.universe:
            return False
        if not np.array_equal(self.reach, other.reach):
            return False
        return bool(np.all(self.bits[self.reach] == other.bits[other.reach]))


def _words(universe_size: int) -> int:
    return max(1, (universe_size + 63) // 64)


def excl_closure(graph: AnnotatedGraph) -> ClosureMatrix:
    """Close ``graph`` under union along paths and intersection across paths.

    A missing path is stored as the full set, which is the neutral element of
    intersection and absorbs union, so it needs no special case in the loop.
    """
    n = graph.n
    universe = graph.universe
    index = {link: i for i, link in enumerate(universe)}
    width = _words(len(universe))
    full = np.uint64(0xFFFFFFFFFFFFFFFF)

    reach = np.zeros((n, n), dtype=bool)
    bits = np.full((n, n, width), full, dtype=np.uint64)
    for (a, b), excl in graph.edges.items():
        row = np.zeros(width, dtype=np.uint64)
        for link in excl:
            i = index[link]
            row[i >> 6] |= np.uint64(1 << (i & 63))
        if reach[a - 1, b - 1]:
            bits[a - 1, b - 1] &= row
        else:
            bits[a - 1, b - 1] = row
        reach[a - 1, b - 1] = True

    _eliminate(reach, bits)
    return ClosureMatrix(reach, bits, universe, index)


def _eliminate(reach: np.ndarray, bits: np.ndarray) -> None:
    n = reach.shape[0]
    for c in range(n):
        into = np.flatnonzero(reach[:, c])
        if into.size == 0:
            continue
        out = np.flatnonzero(reach[c, :])
        if out.size == 0:
            continue
        block = np.ix_(into, out)
        via = bits[into, c][:, None, :] | bits[c, out][None, :, :]
        bits[block] &= via
        reach[block] = True
