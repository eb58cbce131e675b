import json

import pytest
from hypothesis import given, settings

from cmrcover.cmr import build_cmr_automaton, cmr_presentation
from cmrcover.errors import DegenerateLanguage, NotFollowerSeparated
from cmrcover.graph import assemble_graph, induced_subgraph, is_irreducible_graph
from cmrcover.minimize import (
    follower_partition,
    graphs_isomorphic,
    is_language_irreducible,
    isomorphism,
    merge_equivalent,
    presents_language,
    reduce_presentation,
    shannon_cover,
)
from cmrcover.oracle import brute_equivalent, debruijn_presentation

from conftest import AB, ABC, BIN, forbidden_sets, fs


def gf_of(f):
    return cmr_presentation(build_cmr_automaton(f))


def named_blocks(g, p):
    return sorted(sorted(g.names[s] for s in b) for b in p.blocks)


def test_partition_merges_level3_pair():
    g = gf_of(fs(["aaaa", "abaa"], ABC))
    blocks = named_blocks(g, follower_partition(g))
    assert ["aaa", "aba"] in blocks
    assert sum(len(b) == 1 for b in blocks) == 4


@pytest.mark.parametrize("w", ["aab", "abab", "abba", "aaaaa", "ba"])
def test_single_word_is_follower_separated(w):
    g = gf_of(fs([w], AB))
    assert follower_partition(g).is_discrete


def test_edgeless_states_share_block():
    g = assemble_graph(["s", "t", "u"], [("s", "t", "a"), ("s", "u", "b")], AB)
    assert named_blocks(g, follower_partition(g)) == [["s"], ["t", "u"]]


def test_golden_mean_cover():
    r = shannon_cover(fs(["aa"], AB))
    assert r.nu == 2 and r.language_irreducible and r.graph_irreducible


def test_alternating_cover_is_proper_subgraph():
    r = shannon_cover(fs(["00", "11"], BIN))
    assert len(r.quotient) == 3
    assert r.nu == 2
    assert r.language_irreducible and not r.graph_irreducible
    assert sorted(r.cover.names) == ["0", "1"]
    cycle = assemble_graph(["x", "y"], [("x", "y", "1"), ("y", "x", "0")], BIN)
    assert graphs_isomorphic(r.cover, cycle)


def test_reducible_one_word():
    r = shannon_cover(fs(["abb"], AB))
    assert not r.language_irreducible
    assert not r.cover_guaranteed_minimal
    assert r.cover == r.quotient


def test_two_word_cover():
    r = shannon_cover(fs(["aaaa", "abaa"], ABC))
    assert r.nu == 5 and r.language_irreducible
    assert r.merged_levels == [3]


def test_running_example_report(running_example):
    r = shannon_cover(running_example)
    assert not r.language_irreducible
    assert len(r.presentation) == 5
    assert len(r.automaton) == 8


def test_degenerate_rejected():
    with pytest.raises(DegenerateLanguage):
        shannon_cover(fs(["0", "1"], BIN))
    with pytest.raises(DegenerateLanguage):
        is_language_irreducible(fs(["0", "1"], BIN))


def test_one_symbol_forbidden():
    r = shannon_cover(fs(["a"], AB))
    assert r.nu == 1 and r.language_irreducible


def test_presents_language_examples(running_example):
    for f in (running_example, fs(["aa"], AB), fs(["aaaa", "abaa"], ABC)):
        assert presents_language(gf_of(f), f)
    cycle = assemble_graph(["0", "1"], [("0", "1", "1"), ("1", "0", "0")], BIN)
    assert presents_language(cycle, fs(["00", "11"], BIN))
    g = gf_of(running_example)
    sub = induced_subgraph(g, [g.state_of("0"), g.state_of("1")])
    assert not presents_language(sub, running_example)


def test_presents_language_rejects_superset():
    full = assemble_graph(["s"], [("s", "s", "a"), ("s", "s", "b")], AB)
    assert not presents_language(full, fs(["aa"], AB))


@pytest.mark.parametrize("words,alphabet,expected", [
    (["00", "11"], BIN, True),
    (["00", "1101", "111"], BIN, False),
    (["aaaa", "aaab"], ABC, True),
    (["abb"], AB, False),
    (["aba"], AB, True),
])
def test_is_language_irreducible(words, alphabet, expected):
    assert is_language_irreducible(fs(words, alphabet)) is expected


def test_isomorphism_examples():
    g = shannon_cover(fs(["aa"], AB)).cover
    assert graphs_isomorphic(g, g)
    _, h = merge_equivalent(debruijn_presentation(fs(["aa"], AB)))
    assert graphs_isomorphic(g, h)
    cycle = assemble_graph(["x", "y"], [("x", "y", "a"), ("y", "x", "a")], AB)
    loop = assemble_graph(["z"], [("z", "z", "a")], AB)
    with pytest.raises(NotFollowerSeparated):
        graphs_isomorphic(cycle, loop)
    two = assemble_graph(["x", "y"], [("x", "y", "a"), ("y", "x", "b")], AB)
    assert not graphs_isomorphic(two, loop)


def test_isomorphism_mapping_respects_edges():
    g = shannon_cover(fs(["aba"], AB)).cover
    perm = [2, 0, 1]
    h = assemble_graph([g.names[perm.index(i)] for i in range(3)],
                       [(perm[s], perm[t], a) for s, t, a in g.edges], AB)
    assert isomorphism(g, h) == {0: 2, 1: 0, 2: 1}


def test_report_json_schema():
    r = shannon_cover(fs(["aaaa", "abaa"], ABC))
    obj = json.loads(r.to_json())
    assert obj["nu"] == 5
    assert obj["language_irreducible"] is True
    assert obj["cover_guaranteed_minimal"] is True
    assert ["aaa", "aba"] in obj["partition_words"]
    assert all(c["holds"] for c in obj["conformance"])
    assert r.to_json() == r.to_json()


def test_summary_mentions_merge():
    text = shannon_cover(fs(["aaaa", "abaa"], ABC)).summary()
    assert "(nu_F): 5" in text
    assert "merged at level 3: {aaa, aba}" in text


@settings(max_examples=80, deadline=None)
@given(forbidden_sets(sizes=(2, 3), max_words=2, max_len=4))
def test_partition_matches_bounded_followers(f):
    g = gf_of(f)
    where = follower_partition(g).block_index()
    for s in g.states:
        for t in g.states:
            if s < t:
                assert (where[s] == where[t]) == brute_equivalent(g, s, t)


@settings(max_examples=80, deadline=None)
@given(forbidden_sets())
def test_cover_presents_language(f):
    if f.is_degenerate:
        return
    r = shannon_cover(f)
    assert presents_language(r.cover, f)
    if r.language_irreducible:
        assert is_irreducible_graph(r.cover)
        assert follower_partition(r.cover).is_discrete
    red = reduce_presentation(r.cover, f)
    assert graphs_isomorphic(red.cover, r.cover) or not r.language_irreducible
