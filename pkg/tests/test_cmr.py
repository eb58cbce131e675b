import pytest
from hypothesis import given, settings

from cmrcover.cmr import (
    build_cmr_automaton,
    cmr_presentation,
    cover_size_bounds,
    delta_gap,
    edge_counts,
    fork_state,
    z_family_analysis,
)
from cmrcover.errors import (
    AlphabetTooSmall,
    FailureUndefined,
    NotTwoWords,
    ShapeMismatch,
    SinkHasNoEdges,
    UnequalLengths,
)
from cmrcover.oracle import naive_longest_suffix

from conftest import AB, ABC, BIN, forbidden_sets, fs


def names(d, states):
    return {d.name(s) for s in states}


def test_running_example_automaton(running_example):
    d = build_cmr_automaton(running_example)
    assert [d.name(s) for s in range(len(d))] == ["ε", "0", "1", "00", "11", "110", "111", "1101"]
    assert names(d, d.sinks) == {"00", "1101", "111"}
    assert d.name(d.delta[d.state("110"), "0"]) == "00"
    assert not d.is_forward(d.state("110"), "0")
    assert {d.name(s): d.name(t) for s, t in d.failure.items()} == {"0": "ε", "1": "ε", "11": "1", "110": "0"}


def test_golden_mean_automaton():
    d = build_cmr_automaton(fs(["aa"], AB))
    assert [d.name(s) for s in range(len(d))] == ["ε", "a", "aa"]
    assert d.delta[0, "b"] == 0
    assert d.delta[d.state("a"), "b"] == 0
    assert d.failure[d.state("a")] == 0


def test_running_example_presentation(running_example):
    g = cmr_presentation(build_cmr_automaton(running_example))
    assert g.names == ("ε", "0", "1", "11", "110")
    assert g.successors(g.state_of("110")) == {}


@pytest.mark.parametrize("n", range(1, 7))
def test_one_letter_chain(n):
    g = cmr_presentation(build_cmr_automaton(fs(["a" * n], AB)))
    assert len(g) == n
    for i in range(n - 1):
        assert g.target(i, "a") == i + 1
    assert all(g.target(i, "b") == 0 for i in range(n))


def test_two_forks_presentation():
    g = cmr_presentation(build_cmr_automaton(fs(["abc", "acb"], ABC)))
    assert set(g.names) == {"ε", "a", "ab", "ac"}


@pytest.mark.parametrize("u,gap", [("110", 2), ("11", 1), ("1", 1), ("0", 1)])
def test_delta_gap(running_example, u, gap):
    assert delta_gap(build_cmr_automaton(running_example), u) == gap


def test_delta_gap_undefined(running_example):
    d = build_cmr_automaton(running_example)
    with pytest.raises(FailureUndefined):
        delta_gap(d, "")
    with pytest.raises(FailureUndefined):
        delta_gap(d, "00")


@pytest.mark.parametrize("v,counts", [("11", (2, 0)), ("0", (1, 1)), ("ε", (2, 0))])
def test_edge_counts(running_example, v, counts):
    assert edge_counts(build_cmr_automaton(running_example), v) == counts


def test_edge_counts_sink(running_example):
    with pytest.raises(SinkHasNoEdges):
        edge_counts(build_cmr_automaton(running_example), "111")


def test_fork_state():
    assert fork_state(fs(["aaaa", "abaa"], ABC)) == ("a",)
    assert fork_state(fs(["aaaa", "aaab"], ABC)) == ("a", "a", "a")
    with pytest.raises(NotTwoWords):
        fork_state(fs(["abc"], ABC))
    with pytest.raises(UnequalLengths):
        fork_state(fs(["ab", "ccc"], ABC))


def test_cover_size_bounds():
    assert cover_size_bounds(fs(["abc", "acb"], ABC)) == (4, 4)
    assert cover_size_bounds(fs(["aaaa", "abaa"], ABC)) == (4, 6)
    with pytest.raises(AlphabetTooSmall):
        cover_size_bounds(fs(["00", "11"], BIN))
    with pytest.raises(NotTwoWords):
        cover_size_bounds(fs(["ab", "ab"], ABC))


def test_z_family_short_tail():
    z = z_family_analysis(fs(["aaa", "aba"], ABC))
    assert z.x_runs == (1, 1) and z.q == 2
    assert z.follower_separated
    assert z.predicted_nu == 4
    assert z.merge_level is None and z.merged_levels == ()


def test_z_family_single_merge():
    z = z_family_analysis(fs(["aaaa", "abaa"], ABC))
    assert z.x_runs == (1, 2)
    assert z.ind_f == {0} and z.chi == frozenset() and z.x_star == 0
    assert z.merge_level == 3 and z.merged_levels == (3,)
    assert z.predicted_nu == 5


def test_z_family_no_merge():
    z = z_family_analysis(fs(["aaaaaa", "ababaa"], ABC))
    assert z.x_runs == (1, 1, 2)
    assert z.p_prefixes == (("a",), tuple("aba"), tuple("ababa"))
    assert z.ind_f == {0, 1} and z.chi == {1} and z.x_star == 1
    assert z.merge_level == 6 and z.merged_levels == ()
    assert z.predicted_nu == 10


def test_z_family_rho_n_minus_1():
    z = z_family_analysis(fs(["aaaa", "aaab"], ABC))
    assert z.predicted_nu == 4


def test_z_family_shape_errors():
    with pytest.raises(ShapeMismatch):
        z_family_analysis(fs(["abc", "acb"], ABC))
    with pytest.raises(ShapeMismatch):
        z_family_analysis(fs(["aaa"], ABC))
    with pytest.raises(AlphabetTooSmall):
        z_family_analysis(fs(["aaa", "aba"], AB))


@settings(max_examples=80, deadline=None)
@given(forbidden_sets(sizes=(3,), max_words=2, equal_lengths=True))
def test_run_factorization_reconstructs(f):
    try:
        z = z_family_analysis(f)
    except ShapeMismatch:
        return
    assert z.reconstruct() == z.z2
    assert all(z.symbol not in b and b for b in z.betas)


@settings(max_examples=100, deadline=None)
@given(forbidden_sets())
def test_states_are_prefixes_in_shortlex(f):
    d = build_cmr_automaton(f)
    prefixes = {w[:i] for w in f.words for i in range(len(w) + 1)}
    assert set(d.words) == prefixes
    assert list(d.words) == sorted(prefixes, key=f.alphabet.shortlex)
    assert d.words[0] == ()
    assert len(d) <= 1 + sum(len(w) for w in f.words)


@settings(max_examples=100, deadline=None)
@given(forbidden_sets())
def test_transition_is_longest_suffix(f):
    d = build_cmr_automaton(f)
    candidates = [w for w in d.words]
    for s in range(len(d)):
        if s in d.sinks:
            continue
        for a in f.alphabet:
            ua = d.words[s] + (a,)
            assert d.words[d.delta[s, a]] == naive_longest_suffix(ua, candidates)
