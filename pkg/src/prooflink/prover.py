"""Proof search over axiom linkings, with two independent correctness checks."""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .closure import Link, bool_closure
from .filter import prune, required_pairs, selection_order
from .formula import Polarity, Sequent
from .frame import (
    CandidateMatrix,
    LinkKind,
    ProofFrame,
    candidate_links,
    count_linkings,
    essential_graph,
    is_complete,
    unfold,
)

log = logging.getLogger(__name__)

__all__ = [
    "ProofNet",
    "SearchOptions",
    "IncompleteLinkingError",
    "OracleRefused",
    "prove",
    "search",
    "validate_essential",
    "dr_oracle",
    "planar_ok",
    "links_cross",
    "enumerate_bruteforce",
    "oracle_bound",
]

DEFAULT_ORACLE_BOUND = 16
DEFAULT_BRUTEFORCE_BOUND = 10_000


class IncompleteLinkingError(ValueError):
    pass


class OracleRefused(RuntimeError):
    """The instance is too large for an exhaustive check."""


@dataclass(frozen=True)
class ProofNet:
    frame: ProofFrame
    linking: tuple  # sorted (negative id, positive id) pairs
    weight: Optional[int] = None

    def tags(self) -> list[tuple[str, str]]:
        return [(self.frame.tag(n), self.frame.tag(p)) for n, p in self.linking]


@dataclass(frozen=True)
class SearchOptions:
    planar: bool = False
    max_solutions: Optional[int] = None
    validate_both: bool = True

    def __post_init__(self):
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be at least 1")


def oracle_bound() -> int:
    return int(os.environ.get("PROOFLINK_ORACLE_BOUND", DEFAULT_ORACLE_BOUND))


# -- correctness ----------------------------------------------------------------

def _check_complete(frame: ProofFrame, linking: Iterable[Link]) -> list[Link]:
    linking = sorted(linking)
    if not is_complete(frame, linking):
        raise IncompleteLinkingError(f"not a complete linking: {linking}")
    return linking


def _reaches(succ: dict, start: int, target: int, blocked: int = 0) -> bool:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        if v == target:
            return True
        for w in succ[v]:
            if w != blocked and w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def validate_essential(frame: ProofFrame, linking: Iterable[Link]) -> bool:
    """Path conditions on the essential net built from ``linking``."""
    linking = _check_complete(frame, linking)
    graph = essential_graph(frame, linking)
    closure = bool_closure(graph)
    if closure.matrix.diagonal().any():
        return False
    succ = graph.successors()
    out = frame.output
    for link in frame.links:
        if link.polarity is Polarity.POSITIVE and link.connective in "/\\":
            neg = next(v for v in link.premisses
                       if frame.polarities[v - 1] is Polarity.NEGATIVE)
            if _reaches(succ, neg, out, blocked=link.conclusion):
                return False
    reachable = set(frame.inputs)
    for i in frame.inputs:
        reachable.update(int(j) + 1 for j in closure.matrix[i - 1].nonzero()[0])
    return all(succ[v] or v == out for v in reachable)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def dr_oracle(frame: ProofFrame, linking: Iterable[Link],
              bound: Optional[int] = None) -> bool:
    """Every switching yields an acyclic, connected undirected graph."""
    linking = _check_complete(frame, linking)
    bound = oracle_bound() if bound is None else bound
    pars = [l for l in frame.links if l.kind is LinkKind.PAR]
    if len(pars) > bound:
        raise OracleRefused(f"{len(pars)} par links exceed the oracle bound {bound}")
    fixed = list(linking)
    for l in frame.links:
        if l.kind is LinkKind.TENSOR:
            fixed.extend((l.conclusion, v) for v in l.premisses)
    v = frame.ess_vertices
    if len(fixed) + len(pars) != v - 1:
        return False
    for switching in itertools.product((0, 1), repeat=len(pars)):
        uf = _UnionFind(v)
        edges = fixed + [(l.conclusion, l.premisses[s]) for l, s in zip(pars, switching)]
        # v - 1 edges and no cycle means a spanning tree
        if not all(uf.union(a, b) for a, b in edges):
            return False
    return True


def links_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Whether two chords over a line of positions cross."""
    i, j = sorted(a)
    k, l = sorted(b)
    return i < k < j < l or k < i < l < j


def planar_ok(frame: ProofFrame, link: Link, committed: Iterable[Link]) -> bool:
    pos = frame.position
    chord = (pos(link[0]), pos(link[1]))
    return not any(links_cross(chord, (pos(n), pos(p))) for n, p in committed)


def enumerate_bruteforce(frame: ProofFrame, validator: str = "dr",
                         bound: int = DEFAULT_BRUTEFORCE_BOUND) -> list[tuple]:
    """All complete linkings accepted by ``validator`` ("dr" or "essential")."""
    check: Callable = {"dr": dr_oracle, "essential": validate_essential}[validator]
    try:
        total = count_linkings(frame)
    except ValueError:
        return []
    if total > bound:
        raise OracleRefused(f"{total} linkings exceed the enumeration bound {bound}")
    per_name = []
    for name in frame.atom_names():
        negs = frame.occurrences(name, Polarity.NEGATIVE)
        poss = frame.occurrences(name, Polarity.POSITIVE)
        per_name.append([list(zip(negs, perm)) for perm in itertools.permutations(poss)])
    found = []
    for parts in itertools.product(*per_name):
        linking = tuple(sorted(itertools.chain.from_iterable(parts)))
        if check(frame, linking):
            found.append(linking)
    return found


# -- search ---------------------------------------------------------------------

def _accept(frame: ProofFrame, linking: list[Link], opts: SearchOptions) -> bool:
    if not validate_essential(frame, linking):
        return False
    if opts.validate_both:
        try:
            return dr_oracle(frame, linking)
        except OracleRefused:
            log.debug("switching oracle skipped: too many par links")
    return True


def search(frame: ProofFrame, opts: SearchOptions = SearchOptions()) -> Iterator[tuple]:
    """Yield complete linkings passing final validation, in selector order."""
    reqs = required_pairs(frame)

    def node(committed: list[Link], cands: CandidateMatrix, depth: int):
        while True:
            if opts.planar:
                cands = cands.without(c for c in cands.cells
                                      if not planar_ok(frame, c, committed))
            result = prune(frame, committed, cands, reqs)
            if result.failed:
                log.debug("%sdead end after %s", "  " * depth, committed)
                return
            cands = result.pruned
            if not result.forced:
                break
            link = result.forced[0]
            log.debug("%sforced %s-%s", "  " * depth, frame.tag(link[0]), frame.tag(link[1]))
            committed = committed + [link]
            cands = cands.commit(link)
        order = selection_order(result, frame)
        if not order:
            linking = sorted(committed)
            if _accept(frame, linking, opts):
                yield tuple(linking)
            else:
                log.debug("%srejected by final check: %s", "  " * depth, linking)
            return
        for link in order:
            log.debug("%stry %s-%s", "  " * depth, frame.tag(link[0]), frame.tag(link[1]))
            yield from node(committed + [link], cands.commit(link), depth + 1)

    yield from node([], candidate_links(frame), 0)


def prove(sequent: Sequent, opts: SearchOptions = SearchOptions()) -> list[ProofNet]:
    frame = unfold(sequent)
    if not frame.balanced:
        return []
    nets = []
    for linking in search(frame, opts):
        nets.append(ProofNet(frame, linking))
        if opts.max_solutions is not None and len(nets) >= opts.max_solutions:
            break
    return nets
