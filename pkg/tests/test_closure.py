import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import dfs_reach
from prooflink.closure import AnnotatedGraph, Digraph, bool_closure, excl_closure
from prooflink.filter import annotated_graph
from prooflink.frame import candidate_links, essential_graph

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _random_digraph(rng, n, density):
    return {(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if rng.random() < density}


# -- boolean closure -----------------------------------------------------------------

def test_bool_closure_edgeless():
    assert not bool_closure(Digraph(4)).matrix.any()


def test_bool_closure_three_cycle():
    assert bool_closure(Digraph(3, {(1, 2), (2, 3), (3, 1)})).matrix.all()


def test_bool_closure_diagonal_needs_cycle():
    m = bool_closure(Digraph(3, {(1, 2), (2, 3)}))
    assert not m.matrix.diagonal().any()
    assert m.reach(1, 3) and not m.reach(3, 1)


def test_worked_graph_reaches_4_to_1(worked_frame):
    g = essential_graph(worked_frame, [(7, 8)])
    m = bool_closure(g)
    assert m.reach(4, 10) and m.reach(10, 1) and m.reach(4, 1)
    assert m.reach(5, 3)


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=9), st.floats(min_value=0.05, max_value=0.5))
def test_bool_closure_matches_dfs(seed, n, density):
    edges = _random_digraph(random.Random(seed), n, density)
    m = bool_closure(Digraph(n, edges))
    for a, b in itertools.product(range(1, n + 1), repeat=2):
        assert m.reach(a, b) == dfs_reach(n, edges, a, b)


# -- annotated closure ---------------------------------------------------------------

def _random_annotated(rng, n, density, universe, p_excl=0.3):
    edges = {}
    for e in _random_digraph(rng, n, density):
        edges[e] = tuple(c for c in universe if rng.random() < p_excl)
    return AnnotatedGraph(n, edges, universe)


def _survives(graph, c):
    """Edges left after choosing candidate c."""
    return {e for e, excl in graph.edges.items() if c not in excl}


def _brute_entry(graph, a, b):
    if not dfs_reach(graph.n, graph.edges, a, b):
        return None
    return tuple(c for c in graph.universe if not dfs_reach(graph.n, _survives(graph, c), a, b))


def _conflict_graph(rng, n, density, rows, cols, k):
    """Candidate edges are links between row and column vertices, annotated
    with the cells sharing their row or column; everything else is structural."""
    cells = rng.sample([(r, c) for r in rows for c in cols], k)
    edges = {e: () for e in _random_digraph(rng, n, density) if e not in cells}
    for r, c in cells:
        edges[r, c] = tuple(x for x in cells if x != (r, c) and (x[0] == r or x[1] == c))
    return AnnotatedGraph(n, edges, tuple(cells))


@settings(max_examples=150, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=12), st.integers(min_value=0, max_value=6))
def test_exclusion_sets_brute_force(seed, n, k):
    rng = random.Random(seed)
    universe = tuple(sorted(rng.sample([(i, j) for i in range(1, 4) for j in range(4, 7)], k)))
    g = _random_annotated(rng, n, rng.uniform(0.05, 0.35), universe)
    cl = excl_closure(g)
    for a, b in itertools.product(range(1, n + 1), repeat=2):
        assert cl.entry(a, b) == _brute_entry(g, a, b), (a, b)


@settings(max_examples=150, deadline=None)
@given(seeds, st.integers(min_value=4, max_value=12), st.integers(min_value=1, max_value=6))
def test_exclusion_sets_with_row_column_conflicts(seed, n, k):
    rng = random.Random(seed)
    verts = list(range(1, n + 1))
    rng.shuffle(verts)
    half = len(verts) // 2
    rows, cols = verts[:half][:3], verts[half:][:3]
    k = min(k, len(rows) * len(cols))
    g = _conflict_graph(rng, n, rng.uniform(0.05, 0.3), rows, cols, k)
    cl = excl_closure(g)
    for a, b in itertools.product(range(1, n + 1), repeat=2):
        assert cl.entry(a, b) == _brute_entry(g, a, b), (a, b)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=10))
def test_annotated_agrees_with_boolean(seed, n):
    rng = random.Random(seed)
    g = _random_annotated(rng, n, 0.25, ((1, 2), (1, 3), (2, 3)))
    assert np.array_equal(excl_closure(g).reach, bool_closure(g.digraph()).matrix)


def test_structural_paths_have_empty_sets():
    g = AnnotatedGraph(4, {(1, 2): (), (2, 3): (), (3, 4): ()}, ((1, 4),))
    cl = excl_closure(g)
    for a in range(1, 5):
        for b in range(a + 1, 5):
            assert cl.entry(a, b) == ()
    assert cl.entry(4, 1) is None


def test_nopath_is_absorbing_for_union():
    # 1 -> 2 exists, 2 -> 3 does not: the pivot at 2 must not create 1 -> 3
    g = AnnotatedGraph(3, {(1, 2): ((1, 1),)}, ((1, 1),))
    assert excl_closure(g).entry(1, 3) is None


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=10))
def test_idempotent(seed, n):
    from prooflink.closure import _eliminate
    rng = random.Random(seed)
    g = _random_annotated(rng, n, 0.3, ((1, 4), (1, 5), (2, 4), (2, 5)))
    cl = excl_closure(g)
    reach, bits = cl.reach.copy(), cl.bits.copy()
    _eliminate(reach, bits)
    assert np.array_equal(reach, cl.reach)
    assert np.array_equal(bits[reach], cl.bits[cl.reach])


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=2, max_value=10))
def test_monotone_under_edge_insertion(seed, n):
    rng = random.Random(seed)
    universe = ((1, 4), (1, 5), (2, 4), (2, 5))
    g = _random_annotated(rng, n, 0.2, universe)
    a, b = rng.randint(1, n), rng.randint(1, n)
    extra = tuple(c for c in universe if rng.random() < 0.5)
    edges = dict(g.edges)
    edges[a, b] = tuple(set(edges.get((a, b), universe)) & set(extra)) if (a, b) in edges else extra
    bigger = AnnotatedGraph(n, edges, universe)
    before, after = excl_closure(g), excl_closure(bigger)
    for x, y in itertools.product(range(1, n + 1), repeat=2):
        old = before.entry(x, y)
        if old is not None:
            new = after.entry(x, y)
            assert new is not None and set(new) <= set(old)


# -- worked example ------------------------------------------------------------------

def test_worked_edge_1_4_exclusion_set(worked_frame):
    g = annotated_graph(worked_frame, [], candidate_links(worked_frame))
    assert g.edges[1, 4] == ((1, 5), (1, 6), (2, 4), (3, 4))


def test_worked_closure_excludes_2_6(worked_frame):
    from prooflink.filter import prune_cycles
    cands = candidate_links(worked_frame)
    acyclic = prune_cycles(cands.commit((7, 8)), bool_closure(essential_graph(worked_frame, [(7, 8)])))
    cl = excl_closure(annotated_graph(worked_frame, [(7, 8)], acyclic))
    for v in (4, 5, 9, 13):
        assert cl.excludes(v, 6, (2, 6)), v
    # the edge itself says only 2-4; following both routes, 1-6 and 2-4 cut every path
    assert (2, 4) in cl.entry(1, 4)


def test_universe_wider_than_one_word():
    universe = tuple((i, 100 + i) for i in range(1, 80))
    edges = {(1, 2): universe[60:70], (2, 3): universe[:2], (1, 3): universe[65:]}
    cl = excl_closure(AnnotatedGraph(3, edges, universe))
    assert cl.entry(1, 3) == tuple(sorted(set(universe[60:70] + universe[:2]) & set(universe[65:])))


def test_edge_outside_range_rejected():
    with pytest.raises(ValueError):
        Digraph(2, {(1, 3)})
    with pytest.raises(ValueError):
        AnnotatedGraph(2, {(1, 2): ((9, 9),)}, ())
