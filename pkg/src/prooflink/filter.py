"""Pruning axiom-link candidates with transitive closures.

Two filters run at every search node:

* acyclicity: a candidate ``n -> p`` is dropped when ``p`` already reaches
  ``n`` through structural and committed edges;
* connectedness: every open candidate becomes an edge labelled with the
  candidates it conflicts with.  After the annotated closure, a candidate is
  dropped when it belongs to the exclusion set of some pair of vertices that
  a correct net must connect.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .closure import (
    AnnotatedGraph,
    BoolMatrix,
    ClosureMatrix,
    Link,
    bool_closure,
    excl_closure,
)
from .formula import Polarity
from .frame import CandidateMatrix, ProofFrame, essential_graph

log = logging.getLogger(__name__)

__all__ = [
    "Origin",
    "RequiredPair",
    "PruneResult",
    "required_pairs",
    "annotated_graph",
    "prune_cycles",
    "prune_connectedness",
    "prune",
    "select_link",
    "selection_order",
]


class Origin(Enum):
    INPUT_TO_OUTPUT = "input-to-output"
    NEG_PROD_BRANCH = "neg-prod-branch"
    POS_PAR_PREMISS = "pos-par-premiss"


@dataclass(frozen=True)
class RequiredPair:
    source: int
    target: int
    origin: Origin


@dataclass(frozen=True)
class PruneResult:
    pruned: CandidateMatrix
    forced: tuple = ()
    failed: bool = False


def required_pairs(frame: ProofFrame) -> list[RequiredPair]:
    """Vertex pairs that must be connected by a path in every correct net."""
    out = frame.output
    pairs = [RequiredPair(i, out, Origin.INPUT_TO_OUTPUT) for i in sorted(frame.inputs)]
    for link in frame.links:
        if link.connective == "*" and link.polarity is Polarity.NEGATIVE:
            pairs.extend(RequiredPair(v, out, Origin.NEG_PROD_BRANCH)
                         for v in link.premisses)
        elif link.connective in "/\\" and link.polarity is Polarity.POSITIVE:
            neg = next(v for v in link.premisses
                       if frame.polarities[v - 1] is Polarity.NEGATIVE)
            pairs.append(RequiredPair(neg, link.conclusion, Origin.POS_PAR_PREMISS))
            pairs.append(RequiredPair(link.conclusion, out, Origin.INPUT_TO_OUTPUT))
    return [p for p in pairs if p.source != p.target]


def annotated_graph(frame: ProofFrame, committed: Iterable[Link],
                    cands: CandidateMatrix) -> AnnotatedGraph:
    """Structural and committed edges with empty sets, candidates with their conflicts."""
    edges = {e: () for e in essential_graph(frame, committed).edges}
    for link in sorted(cands.cells):
        edges[link] = tuple(cands.conflicts(link))
    return AnnotatedGraph(frame.ess_vertices, edges, tuple(sorted(cands.cells)))


def prune_cycles(cands: CandidateMatrix, closure: BoolMatrix) -> CandidateMatrix:
    """Drop ``n -> p`` whenever ``p`` already reaches ``n``."""
    cyclic = [(n, p) for n, p in cands.cells if closure.reach(p, n)]
    return cands.without(cyclic)


def _line_counts(cands: CandidateMatrix):
    for _, rows, cols in cands.blocks:
        for r in rows:
            yield ("row", r), cands.row(r)
        for c in cols:
            yield ("col", c), cands.col(c)


def prune_connectedness(cands: CandidateMatrix, aclosure: ClosureMatrix,
                        reqs: Iterable[RequiredPair]) -> PruneResult:
    reqs = list(reqs)
    if any(not aclosure.has_path(r.source, r.target) for r in reqs):
        return PruneResult(cands, (), True)
    severing = [c for c in cands.cells
                if any(aclosure.excludes(r.source, r.target, c) for r in reqs)]
    return _finish(cands.without(severing))


def _finish(pruned: CandidateMatrix) -> PruneResult:
    forced = set()
    for _, line in _line_counts(pruned):
        if not line:
            return PruneResult(pruned, (), True)
        if len(line) == 1:
            forced.add(line[0])
    return PruneResult(pruned, tuple(sorted(forced)), False)


def prune(frame: ProofFrame, committed: Iterable[Link], cands: CandidateMatrix,
          reqs: Optional[list[RequiredPair]] = None) -> PruneResult:
    """One acyclicity pass followed by one connectedness pass."""
    committed = list(committed)
    if reqs is None:
        reqs = required_pairs(frame)
    acyclic = prune_cycles(cands, bool_closure(essential_graph(frame, committed)))
    if acyclic.cells != cands.cells:
        log.debug("acyclicity removed %s", sorted(cands.cells - acyclic.cells))
    aclosure = excl_closure(annotated_graph(frame, committed, acyclic))
    result = prune_connectedness(acyclic, aclosure, reqs)
    if result.pruned.cells != acyclic.cells:
        log.debug("connectedness removed %s", sorted(acyclic.cells - result.pruned.cells))
    return result


def selection_order(result: PruneResult, frame: ProofFrame) -> list[Link]:
    """Candidates of the most constrained row or column, in the order to try them.

    Ties between lines go to the one whose occurrence sits furthest left;
    within the line, partners are tried left to right.
    """
    best = None
    for (kind, vertex), line in _line_counts(result.pruned):
        if not line:
            continue
        key = (len(line), frame.position(vertex))
        if best is None or key < best[0]:
            best = (key, kind, line)
    if best is None:
        return []
    _, kind, line = best
    partner = 1 if kind == "row" else 0
    return sorted(line, key=lambda c: frame.position(c[partner]))


def select_link(result: PruneResult, frame: ProofFrame) -> Optional[Link]:
    """The next link to branch on, or ``None`` once no open cells remain."""
    order = selection_order(result, frame)
    return order[0] if order else None
