"""Unfolding a sequent into a proof frame.

A frame has one vertex per formula occurrence.  Each compound occurrence is
the conclusion of exactly one link, a tensor or a par depending on its
connective and polarity.  The same pass also produces the directed
essential-net edges.  Axiom edges are added later by :func:`essential_graph`
and always run from the negative atom to the positive one.

Premisses are laid out left to right as they are drawn: negative formulas keep
the order of their subformulas and positive ones reverse it.  Every vertex is
placed in-order between its two premisses, which gives the linear order of
the atoms.

Vertex numbering: atoms come first, grouped by atom name in order of first
appearance.  Within a name the negative occurrences come first, then the
positive ones, each in left-to-right order.  Compound occurrences follow in
left-to-right order.  For ``s/(np\\s), (s/(np\\s))\\s |- s`` this gives
s1..s3 negative, s4..s6 positive, np7, np8, and the connectives 9..13.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .closure import Digraph, Link
from .formula import (
    Atom,
    Formula,
    Over,
    Polarity,
    Prod,
    Sequent,
    Under,
    atom_multiset,
    balanced,
)

__all__ = [
    "AtomOccurrence",
    "LinkKind",
    "FrameLink",
    "FrameStats",
    "ProofFrame",
    "CandidateMatrix",
    "UnbalancedError",
    "unfold",
    "candidate_links",
    "count_linkings",
    "essential_graph",
    "is_complete",
]

NEG = Polarity.NEGATIVE
POS = Polarity.POSITIVE


class UnbalancedError(ValueError):
    pass


class LinkKind(Enum):
    TENSOR = "tensor"
    PAR = "par"


@dataclass(frozen=True)
class AtomOccurrence:
    id: int
    name: str
    polarity: Polarity
    position: int

    @property
    def tag(self) -> str:
        return f"{self.name}{self.id}"


@dataclass(frozen=True)
class FrameLink:
    kind: LinkKind
    connective: str
    polarity: Polarity
    premisses: tuple[int, int]
    conclusion: int


@dataclass(frozen=True)
class FrameStats:
    h: int
    t: int
    p: int
    a: int


@dataclass(frozen=True)
class ProofFrame:
    sequent: Sequent
    atoms: tuple  # AtomOccurrence, indexed by id - 1
    links: tuple  # FrameLink
    formulas: tuple  # Formula per vertex, indexed by id - 1
    polarities: tuple  # Polarity per vertex
    order: tuple  # all vertex ids, left to right
    ess_edges: tuple  # structural (from, to) pairs, sorted
    inputs: frozenset
    output: int
    conclusions: tuple  # negative conclusions, antecedent order
    stats: FrameStats
    succedent_vertices: frozenset = frozenset()

    @property
    def ess_vertices(self) -> int:
        return len(self.formulas)

    def atom(self, vertex: int) -> AtomOccurrence:
        return self.atoms[vertex - 1]

    def tag(self, vertex: int) -> str:
        if vertex <= len(self.atoms):
            return self.atoms[vertex - 1].tag
        return str(vertex)

    def position(self, vertex: int) -> int:
        return self.atoms[vertex - 1].position

    def atom_names(self) -> list[str]:
        return list(dict.fromkeys(a.name for a in self.atoms))

    def occurrences(self, name: str, polarity: Polarity) -> list[int]:
        """Ids of the occurrences of ``name`` with ``polarity``, left to right."""
        occ = [a for a in self.atoms if a.name == name and a.polarity is polarity]
        return [a.id for a in sorted(occ, key=lambda a: a.position)]

    def reading_positions(self) -> dict[int, int]:
        """Atom positions with the succedent's atoms read first.

        This is a rotation of :attr:`AtomOccurrence.position`.  It puts the
        expected goal before the words, which is the order used for distance
        weights.
        """
        n_succ = sum(1 for a in self.atoms if a.id in self.succedent_vertices)
        total = len(self.atoms)
        return {a.id: (a.position + n_succ) % total for a in self.atoms}

    @property
    def structural_graph(self) -> Digraph:
        return Digraph(self.ess_vertices, frozenset(self.ess_edges))

    @property
    def balanced(self) -> bool:
        return balanced(atom_multiset(self.sequent))


# -- unfolding ----------------------------------------------------------------

@dataclass
class _Node:
    formula: Formula
    polarity: Polarity
    children: tuple = ()  # drawn left to right
    connective: str = ""
    kind: Optional[LinkKind] = None
    vid: int = 0


def _connective(f: Formula) -> str:
    return {Over: "/", Under: "\\", Prod: "*"}[type(f)]


def _expand(f: Formula, pol: Polarity) -> _Node:
    if isinstance(f, Atom):
        return _Node(f, pol)
    if isinstance(f, Over):
        # left/right: the argument `right` flips polarity
        fun, arg = _expand(f.left, pol), _expand(f.right, ~pol)
        if pol is NEG:
            children, kind = (fun, arg), LinkKind.TENSOR
        else:
            children, kind = (arg, fun), LinkKind.PAR
    elif isinstance(f, Under):
        arg, fun = _expand(f.left, ~pol), _expand(f.right, pol)
        if pol is NEG:
            children, kind = (arg, fun), LinkKind.TENSOR
        else:
            children, kind = (fun, arg), LinkKind.PAR
    else:
        left, right = _expand(f.left, pol), _expand(f.right, pol)
        if pol is NEG:
            children, kind = (left, right), LinkKind.PAR
        else:
            children, kind = (right, left), LinkKind.TENSOR
    return _Node(f, pol, children, _connective(f), kind)


def _inorder(node: _Node, out: list) -> None:
    if not node.children:
        out.append(node)
        return
    _inorder(node.children[0], out)
    out.append(node)
    _inorder(node.children[1], out)


def _struct_edges(node: _Node) -> list[Link]:
    """Essential-net edges contributed by the link whose conclusion is ``node``."""
    x = node.vid
    f = node.formula
    if isinstance(f, Prod):
        a, b = (node.children if node.polarity is NEG else node.children[::-1])
        if node.polarity is NEG:
            return [(x, a.vid), (x, b.vid)]
        return [(a.vid, x), (b.vid, x)]
    fun, arg = _fun_arg(node)
    if node.polarity is NEG:
        return [(x, fun.vid), (arg.vid, fun.vid)]
    return [(fun.vid, x)]


def _fun_arg(node: _Node) -> tuple[_Node, _Node]:
    """(result, argument) children of an implication node."""
    f = node.formula
    c0, c1 = node.children
    if isinstance(f, Over):
        return (c0, c1) if node.polarity is NEG else (c1, c0)
    return (c1, c0) if node.polarity is NEG else (c0, c1)


def unfold(sequent: Sequent) -> ProofFrame:
    roots = [_expand(f, NEG) for f in sequent.antecedent]
    roots.append(_expand(sequent.succedent, POS))

    drawn: list[_Node] = []
    for root in roots:
        _inorder(root, drawn)
    succ_start = len(drawn) - _count_nodes(roots[-1])

    leaves = [n for n in drawn if not n.children]
    names = list(dict.fromkeys(n.formula.name for n in leaves))
    next_id = 1
    for name in names:
        for pol in (NEG, POS):
            for n in leaves:
                if n.formula.name == name and n.polarity is pol:
                    n.vid = next_id
                    next_id += 1
    for n in drawn:
        if n.children:
            n.vid = next_id
            next_id += 1

    v = len(drawn)
    formulas = [None] * v
    polarities = [None] * v
    for n in drawn:
        formulas[n.vid - 1] = n.formula
        polarities[n.vid - 1] = n.polarity

    atoms = [None] * len(leaves)
    for position, n in enumerate(leaves):
        atoms[n.vid - 1] = AtomOccurrence(n.vid, n.formula.name, n.polarity, position)

    links, edges = [], []
    inputs = {r.vid for r in roots[:-1]}
    for n in drawn:
        if not n.children:
            continue
        links.append(FrameLink(n.kind, n.connective, n.polarity,
                               (n.children[0].vid, n.children[1].vid), n.vid))
        edges.extend(_struct_edges(n))
        if n.polarity is POS and n.connective in "/\\":
            inputs.add(_fun_arg(n)[1].vid)
    links.sort(key=lambda link: link.conclusion)

    t = sum(1 for link in links if link.kind is LinkKind.TENSOR)
    p = len(links) - t
    h = len(sequent.antecedent)
    a = sum(1 for n in leaves if n.polarity is POS)

    frame = ProofFrame(
        sequent=sequent,
        atoms=tuple(atoms),
        links=tuple(links),
        formulas=tuple(formulas),
        polarities=tuple(polarities),
        order=tuple(n.vid for n in drawn),
        ess_edges=tuple(sorted(edges)),
        inputs=frozenset(inputs),
        output=roots[-1].vid,
        conclusions=tuple(r.vid for r in roots[:-1]),
        stats=FrameStats(h, t, p, a),
        succedent_vertices=frozenset(n.vid for n in drawn[succ_start:]),
    )
    return frame


def _count_nodes(node: _Node) -> int:
    return 1 + sum(_count_nodes(c) for c in node.children)


# -- candidate axiom links ----------------------------------------------------

@dataclass(frozen=True)
class CandidateMatrix:
    """Open axiom-link candidates, one block per atom name.

    ``blocks`` holds ``(name, rows, cols)`` with rows the open negative
    occurrences and cols the open positive ones, both left to right.
    Committed occurrences are dropped from the blocks.
    """

    blocks: tuple
    cells: frozenset

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(self.cells))

    def __contains__(self, link) -> bool:
        return link in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def rows(self) -> list[int]:
        return [r for _, rows, _ in self.blocks for r in rows]

    def cols(self) -> list[int]:
        return [c for _, _, cols in self.blocks for c in cols]

    def row(self, n: int) -> list[Link]:
        return sorted(c for c in self.cells if c[0] == n)

    def col(self, p: int) -> list[Link]:
        return sorted(c for c in self.cells if c[1] == p)

    def block(self, name: str) -> tuple[tuple, tuple]:
        for b, rows, cols in self.blocks:
            if b == name:
                return rows, cols
        raise KeyError(name)

    def without(self, links: Iterable[Link]) -> "CandidateMatrix":
        return CandidateMatrix(self.blocks, self.cells - frozenset(links))

    def commit(self, link: Link) -> "CandidateMatrix":
        """Drop the row and column of ``link``; it is no longer a candidate."""
        n, p = link
        blocks = tuple(
            (name, tuple(r for r in rows if r != n), tuple(c for c in cols if c != p))
            for name, rows, cols in self.blocks
        )
        cells = frozenset(c for c in self.cells if c[0] != n and c[1] != p)
        return CandidateMatrix(blocks, cells)

    def conflicts(self, link: Link) -> list[Link]:
        """Other candidates sharing a row or column with ``link``."""
        n, p = link
        return sorted(c for c in self.cells if (c[0] == n) != (c[1] == p))

    def exhausted(self) -> bool:
        return not any(rows or cols for _, rows, cols in self.blocks)


def candidate_links(frame: ProofFrame) -> CandidateMatrix:
    blocks, cells = [], set()
    for name in frame.atom_names():
        rows = tuple(frame.occurrences(name, NEG))
        cols = tuple(frame.occurrences(name, POS))
        blocks.append((name, rows, cols))
        cells.update((n, p) for n in rows for p in cols)
    return CandidateMatrix(tuple(blocks), frozenset(cells))


def count_linkings(frame: ProofFrame) -> int:
    total = 1
    for name, (neg, pos) in atom_multiset(frame.sequent).items():
        if neg != pos:
            raise UnbalancedError(
                f"atom {name!r} has {neg} negative and {pos} positive occurrences")
        total *= math.factorial(neg)
    return total


def essential_graph(frame: ProofFrame, partial: Iterable[Link] = ()) -> Digraph:
    """Structural edges plus one negative-to-positive edge per axiom link."""
    return Digraph(frame.ess_vertices, frozenset(frame.ess_edges) | frozenset(partial))


def is_complete(frame: ProofFrame, linking: Iterable[Link]) -> bool:
    linking = list(linking)
    negs = [n for n, _ in linking]
    poss = [p for _, p in linking]
    if len(set(negs)) != len(negs) or len(set(poss)) != len(poss):
        return False
    for n, p in linking:
        an, ap = frame.atom(n), frame.atom(p)
        if an.name != ap.name or an.polarity is not NEG or ap.polarity is not POS:
            return False
    return len(linking) * 2 == len(frame.atoms)
