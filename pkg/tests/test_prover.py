import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SOMEONE, WORKED, random_corpus, random_sequent
from prooflink.formula import parse_sequent
from prooflink.frame import unfold
from prooflink.prover import (
    IncompleteLinkingError,
    OracleRefused,
    SearchOptions,
    dr_oracle,
    enumerate_bruteforce,
    links_cross,
    planar_ok,
    prove,
    search,
    validate_essential,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

NET_A = ((1, 5), (2, 4), (3, 6), (7, 8))
NET_B = ((1, 6), (2, 5), (3, 4), (7, 8))


def _linkings(nets):
    return [net.linking for net in nets]


def _all_linkings(frame):
    negs = [a.id for a in frame.atoms if a.polarity.sign == "-"]
    poss = [a.id for a in frame.atoms if a.polarity.sign == "+"]
    for perm in itertools.permutations(poss):
        pairs = list(zip(negs, perm))
        if all(frame.atom(n).name == frame.atom(p).name for n, p in pairs):
            yield tuple(sorted(pairs))


def test_worked_example_two_nets():
    nets = prove(parse_sequent(WORKED))
    assert sorted(_linkings(nets)) == [NET_A, NET_B]
    assert [n.tags() for n in nets][0][-1] == ("np7", "np8")


def test_identity():
    nets = prove(parse_sequent("s |- s"))
    assert _linkings(nets) == [((1, 2),)]


def test_unbalanced_gives_nothing():
    assert prove(parse_sequent("np |- s")) == []


def test_max_solutions():
    nets = prove(parse_sequent(WORKED), SearchOptions(max_solutions=1))
    assert len(nets) == 1


def test_someone_loves_everyone():
    frame = unfold(parse_sequent(SOMEONE))
    assert len(prove(frame.sequent)) == 4
    assert len(prove(frame.sequent, SearchOptions(planar=True))) == 2


def test_validate_essential_examples(worked_frame):
    assert validate_essential(worked_frame, NET_A)
    assert validate_essential(worked_frame, NET_B)
    # s1-s4 closes the cycle through vertex 10
    assert not validate_essential(worked_frame, ((1, 4), (2, 5), (3, 6), (7, 8)))
    frame = unfold(parse_sequent("s |- s"))
    assert validate_essential(frame, ((1, 2),))


def test_validate_essential_rejects_incomplete(worked_frame):
    with pytest.raises(IncompleteLinkingError):
        validate_essential(worked_frame, NET_A[:2])
    with pytest.raises(IncompleteLinkingError):
        dr_oracle(worked_frame, NET_A[:2])


def test_dr_accepts_exactly_two_of_six(worked_frame):
    all_six = list(_all_linkings(worked_frame))
    assert len(all_six) == 6
    accepted = [l for l in all_six if dr_oracle(worked_frame, l)]
    assert sorted(accepted) == [NET_A, NET_B]


def test_dr_identity():
    assert dr_oracle(unfold(parse_sequent("s |- s")), ((1, 2),))


def test_dr_oracle_refuses_over_bound(worked_frame, monkeypatch):
    with pytest.raises(OracleRefused):
        dr_oracle(worked_frame, NET_A, bound=1)
    monkeypatch.setenv("PROOFLINK_ORACLE_BOUND", "1")
    with pytest.raises(OracleRefused):
        dr_oracle(worked_frame, NET_A)


def test_enumerate_bruteforce(worked_frame):
    assert sorted(enumerate_bruteforce(worked_frame, "dr")) == [NET_A, NET_B]
    assert sorted(enumerate_bruteforce(worked_frame, "essential")) == [NET_A, NET_B]
    assert enumerate_bruteforce(unfold(parse_sequent("s |- s"))) == [((1, 2),)]
    with pytest.raises(OracleRefused):
        enumerate_bruteforce(worked_frame, bound=5)


def test_links_cross():
    assert not links_cross((0, 3), (1, 2))
    assert links_cross((0, 2), (1, 3))
    assert links_cross((3, 1), (0, 2))
    assert not links_cross((0, 1), (2, 3))


def test_planar_ok_worked(worked_frame):
    pos = worked_frame.position

    def brute(linking):
        return not any(links_cross((pos(a), pos(b)), (pos(c), pos(d)))
                       for (a, b), (c, d) in itertools.combinations(linking, 2))

    for linking in (NET_A, NET_B):
        incremental = all(planar_ok(worked_frame, l, linking[:i]) for i, l in enumerate(linking))
        assert incremental == brute(linking)
    planar = _linkings(prove(worked_frame.sequent, SearchOptions(planar=True)))
    assert planar == [l for l in (NET_A, NET_B) if brute(l)]


# -- corpus properties -------------------------------------------------------------------

CORPUS = random_corpus(20240601, 150, max_pairs=5, max_size=7)


@pytest.mark.parametrize("index", range(0, len(CORPUS), 10))
def test_prover_equals_bruteforce(index):
    for sequent in CORPUS[index:index + 10]:
        frame = unfold(sequent)
        expected = sorted(enumerate_bruteforce(frame, "dr"))
        got = _linkings(prove(sequent))
        assert len(got) == len(set(got))
        assert sorted(got) == expected, str(sequent)
        planar = _linkings(prove(sequent, SearchOptions(planar=True)))
        assert set(planar) <= set(got)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_essential_iff_dr(seed):
    frame = unfold(random_sequent(random.Random(seed), max_pairs=5))
    if frame.stats.p > 6:
        return
    for linking in _all_linkings(frame):
        assert validate_essential(frame, linking) == dr_oracle(frame, linking), linking


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_every_result_revalidates_and_order_is_stable(seed):
    sequent = random_sequent(random.Random(seed), max_pairs=5, prod_weight=0.35)
    nets = prove(sequent)
    again = prove(sequent)
    assert _linkings(nets) == _linkings(again)
    for net in nets:
        assert validate_essential(net.frame, net.linking)
        assert dr_oracle(net.frame, net.linking)


def test_search_is_lazy(worked_frame):
    gen = search(worked_frame)
    first = next(gen)
    assert first in (NET_A, NET_B)
