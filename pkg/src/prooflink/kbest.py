"""Distance weights on axiom links and k-best linkings (Hungarian + Murty).

Forbidden cells are :data:`INF`.  The solvers never do arithmetic on it: an
infinite cell is simply not an edge of the bipartite graph.

Ties between equal-weight assignments are broken lexicographically on the
column chosen for each row (rows in order).  The tie-break is folded into the
integer costs: each cost is scaled by ``n**n`` and column ``j`` of row ``i``
adds ``j * n**(n-1-i)``.  Total cost then orders assignments by weight first
and by the column vector second.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .formula import Polarity
from .frame import CandidateMatrix, ProofFrame

__all__ = [
    "INF",
    "CostMatrix",
    "RankedLinking",
    "cost_matrix",
    "cost_blocks",
    "hungarian",
    "murty_kbest",
]

INF = math.inf


@dataclass(frozen=True)
class CostMatrix:
    """Square matrix with labelled rows (negative ids) and columns (positive ids)."""

    values: tuple
    rows: tuple = ()
    cols: tuple = ()

    def __post_init__(self):
        values = tuple(tuple(r) for r in self.values)
        object.__setattr__(self, "values", values)
        if not self.rows:
            object.__setattr__(self, "rows", tuple(range(len(values))))
        if not self.cols:
            width = len(values[0]) if values else 0
            object.__setattr__(self, "cols", tuple(range(width)))
        for r in values:
            if len(r) != len(self.cols):
                raise ValueError("ragged cost matrix")
            for x in r:
                if x != INF and (not isinstance(x, int) or isinstance(x, bool) or x < 0):
                    raise ValueError(f"cost entries must be non-negative integers or INF, got {x!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, key):
        i, j = key
        return self.values[i][j]


@dataclass(frozen=True, order=True)
class RankedLinking:
    weight: int
    linking: tuple  # ((row label, col label), ...) ordered by row


def _as_matrix(cost) -> CostMatrix:
    return cost if isinstance(cost, CostMatrix) else CostMatrix(cost)


def cost_blocks(frame: ProofFrame, cands: CandidateMatrix) -> dict[str, CostMatrix]:
    """Per atom name, the distance between occurrences for admissible cells."""
    pos = frame.reading_positions()
    out = {}
    for name in frame.atom_names():
        rows = tuple(frame.occurrences(name, Polarity.NEGATIVE))
        cols = tuple(frame.occurrences(name, Polarity.POSITIVE))
        values = [[abs(pos[n] - pos[p]) if (n, p) in cands else INF for p in cols]
                  for n in rows]
        out[name] = CostMatrix(values, rows, cols)
    return out


def cost_matrix(frame: ProofFrame, cands: CandidateMatrix) -> CostMatrix:
    """Block-diagonal composite over all atom names; cross-name cells are INF."""
    blocks = cost_blocks(frame, cands).values()
    rows = tuple(sorted(r for b in blocks for r in b.rows))
    cols = tuple(sorted(c for b in blocks for c in b.cols))
    cell = {}
    for b in blocks:
        for i, r in enumerate(b.rows):
            for j, c in enumerate(b.cols):
                cell[r, c] = b.values[i][j]
    values = [[cell.get((r, c), INF) for c in cols] for r in rows]
    return CostMatrix(values, rows, cols)


# -- assignment -------------------------------------------------------------------

def _encode(values: Sequence[Sequence]) -> list[list[Optional[int]]]:
    n = len(values)
    scale = n ** n
    return [[None if x == INF else x * scale + j * n ** (n - 1 - i)
             for j, x in enumerate(row)] for i, row in enumerate(values)]


def _solve(c: list[list[Optional[int]]]) -> Optional[list[int]]:
    """Min-cost perfect matching on the finite cells, or None.

    Shortest augmenting paths with row/column potentials, one row at a time.
    """
    n = len(c)
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j]: row (1-based) holding column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv: list = [None] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta, j1 = None, 0
            row = c[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                x = row[j - 1]
                if x is not None:
                    cur = x - u[i0] - v[j]
                    if minv[j] is None or cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] is not None and (delta is None or minv[j] < delta):
                    delta, j1 = minv[j], j
            if delta is None:
                return None
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    assign = [0] * n
    for j in range(1, n + 1):
        assign[match[j] - 1] = j - 1
    return assign


def _ranked(cost: CostMatrix, assign: Sequence[int]) -> RankedLinking:
    weight = sum(cost.values[i][j] for i, j in enumerate(assign))
    return RankedLinking(weight, tuple((cost.rows[i], cost.cols[j]) for i, j in enumerate(assign)))


def hungarian(cost) -> Optional[RankedLinking]:
    """Minimum-weight perfect matching, or None when every matching hits INF."""
    cost = _as_matrix(cost)
    n, m = cost.shape
    if n != m:
        raise ValueError(f"cost matrix must be square, got {n}x{m}")
    if n == 0:
        return RankedLinking(0, ())
    assign = _solve(_encode(cost.values))
    return None if assign is None else _ranked(cost, assign)


def murty_kbest(cost, k: int) -> list[RankedLinking]:
    """Up to ``k`` cheapest finite matchings, by weight then column order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    cost = _as_matrix(cost)
    n, m = cost.shape
    if n != m:
        raise ValueError(f"cost matrix must be square, got {n}x{m}")
    if n == 0:
        return [RankedLinking(0, ())]
    base = _encode(cost.values)
    first = _solve(base)
    if first is None:
        return []

    def key(assign):
        return sum(base[i][j] for i, j in enumerate(assign))

    tick = itertools.count()
    heap = [(key(first), next(tick), first, base)]
    out = []
    while heap and len(out) < k:
        _, _, assign, sub = heapq.heappop(heap)
        out.append(_ranked(cost, assign))
        # Partition the rest of this subproblem: child i keeps rows < i as in
        # `assign` and forbids row i's column.
        fixed = [row[:] for row in sub]
        for i in range(n - 1):
            child = [row[:] for row in fixed]
            child[i][assign[i]] = None
            sol = _solve(child)
            if sol is not None:
                heapq.heappush(heap, (key(sol), next(tick), sol, child))
            j = assign[i]
            keep = fixed[i][j]
            fixed[i] = [None] * n
            for r in fixed:
                r[j] = None
            fixed[i][j] = keep
    return out
