from __future__ import annotations

import random
import sys

import pytest

from prooflink.formula import Atom, Over, Polarity, Prod, Sequent, Under, parse_sequent, polarized_atoms
from prooflink.frame import unfold

WORKED = r"s/(np\s), (s/(np\s))\s |- s"
SOMEONE = r"s/(np\s), (np\s)/np, (s/np)\s |- s"


@pytest.fixture
def worked_frame():
    return unfold(parse_sequent(WORKED))


@pytest.fixture
def someone_frame():
    return unfold(parse_sequent(SOMEONE))


# -- random balanced sequents ------------------------------------------------------

class _Hole:
    """Leaf placeholder; names are filled in once polarities are known."""

    def __init__(self):
        self.name = "x"


def _shape(rng: random.Random, size: int, prod_weight: float):
    if size <= 1:
        return _Hole()
    left = rng.randrange(0, size - 1, 2) + 1 if size > 2 else 1
    right = size - 1 - left
    if right < 1:
        left, right = size - 2, 1
    r = rng.random()
    con = Prod if r < prod_weight else (Over if r < (1 + prod_weight) / 2 else Under)
    return (con, _shape(rng, left, prod_weight), _shape(rng, right, prod_weight))


def _holes(shape, pol: Polarity, out: list):
    if isinstance(shape, _Hole):
        out.append((shape, pol))
        return
    con, left, right = shape
    if con is Prod:
        _holes(left, pol, out)
        _holes(right, pol, out)
    elif con is Over:
        _holes(left, pol, out)
        _holes(right, ~pol, out)
    else:
        _holes(left, ~pol, out)
        _holes(right, pol, out)


def _build(shape):
    if isinstance(shape, _Hole):
        return Atom(shape.name)
    con, left, right = shape
    return con(_build(left), _build(right))


def random_sequent(rng: random.Random, max_size: int = 7, max_ante: int = 3,
                   max_pairs: int = 5, names: str = "abc",
                   prod_weight: float = 0.2) -> Sequent:
    """A random sequent with balanced atoms; every formula has size <= max_size."""
    sizes = [1, 3, 5, 7, 9][: (max_size + 1) // 2]
    while True:
        ante = [_shape(rng, rng.choice(sizes), prod_weight)
                for _ in range(rng.randint(0, max_ante))]
        succ = _shape(rng, rng.choice(sizes), prod_weight)
        leaves: list = []
        for s in ante:
            _holes(s, Polarity.NEGATIVE, leaves)
        _holes(succ, Polarity.POSITIVE, leaves)
        negs = [h for h, p in leaves if p is Polarity.NEGATIVE]
        poss = [h for h, p in leaves if p is Polarity.POSITIVE]
        if len(negs) != len(poss) or not 1 <= len(negs) <= max_pairs:
            continue
        rng.shuffle(poss)
        for n, p in zip(negs, poss):
            n.name = p.name = rng.choice(names)
        return Sequent(tuple(_build(s) for s in ante), _build(succ))


def random_corpus(seed: int, count: int, **kw) -> list[Sequent]:
    rng = random.Random(seed)
    return [random_sequent(rng, **kw) for _ in range(count)]


# -- graph oracles -----------------------------------------------------------------

def dfs_reach(n: int, edges, a: int, b: int) -> bool:
    """Non-empty directed path from a to b."""
    succ = {v: [] for v in range(1, n + 1)}
    for x, y in edges:
        succ[x].append(y)
    stack = list(succ[a])
    seen = set(stack)
    while stack:
        v = stack.pop()
        if v == b:
            return True
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def has_cycle(n: int, edges) -> bool:
    return any(dfs_reach(n, edges, v, v) for v in range(1, n + 1))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
