"""Named conformance predicates over one forbidden set.

Each predicate returns a :class:`CheckResult` whose status is ``holds``,
``fails`` (with a witness) or ``not-applicable`` when its hypotheses do not
apply to the instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import oracle
from .cmr import (
    CmrAutomaton,
    build_cmr_automaton,
    cmr_presentation,
    cover_size_bounds,
    delta_gap,
    edge_counts,
    fork_state,
    z_family_analysis,
)
from .errors import DegenerateLanguage, ShapeMismatch
from .graph import LabeledGraph, is_irreducible_graph
from .minimize import (
    CoverReport,
    follower_partition,
    graphs_isomorphic,
    presents_language,
    reduce_presentation,
    shannon_cover,
)
from .words import ForbiddenSet, is_prefix

HOLDS, FAILS, NA = "holds", "fails", "not-applicable"

# literal enumeration is used below this many candidate words, product search above
LITERAL_LIMIT = 4096


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    witness: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAILS

    def line(self) -> str:
        tag = {HOLDS: "PASS", FAILS: "FAIL", NA: "N/A "}[self.status]
        return f"{tag} {self.name}" + (f": {self.witness}" if self.witness else "")


def _verdict(name: str, failures: list) -> CheckResult:
    if failures:
        return CheckResult(name, FAILS, failures[0])
    return CheckResult(name, HOLDS)


def _na(name: str, why: str = "") -> CheckResult:
    return CheckResult(name, NA, why)


# --- structural predicates on D_F / G_F --------------------------------------

def check_automaton_shape(d: CmrAutomaton) -> CheckResult:
    bad = []
    prefixes = {w[:i] for w in d.fset.words for i in range(len(w) + 1)}
    if set(d.words) != prefixes:
        bad.append("state set differs from the prefixes of F")
    for s in range(len(d)):
        out = [a for a in d.alphabet if (s, a) in d.delta]
        if s in d.sinks and out:
            bad.append(f"sink {d.name(s)} has outgoing edges")
        if s not in d.sinks and len(out) != len(d.alphabet):
            bad.append(f"{d.name(s)} has {len(out)} outgoing edges")
    return _verdict("automaton_shape", bad)


def check_incoming_labels(d: CmrAutomaton) -> CheckResult:
    bad = []
    loops = {}
    for (s, a), t in d.delta.items():
        if t != d.initial and d.words[t][-1] != a:
            bad.append(f"edge {d.name(s)} -{a}-> {d.name(t)}")
        if s == t:
            loops[s] = loops.get(s, 0) + 1
    bad += [f"{d.name(s)} has {k} self-loops" for s, k in loops.items() if k > 1 and s != d.initial]
    return _verdict("incoming_labels", bad)


def check_edge_lengths(d: CmrAutomaton) -> CheckResult:
    bad = []
    for (s, a), t in d.delta.items():
        u, v = d.words[s], d.words[t]
        if d.is_forward(s, a):
            if v != u + (a,):
                bad.append(f"forward {d.name(s)} -{a}-> {d.name(t)}")
        elif (u + (a,)) in d.index or len(v) > len(u):
            bad.append(f"backward {d.name(s)} -{a}-> {d.name(t)}")
    return _verdict("edge_lengths", bad)


def check_failure_domain(d: CmrAutomaton) -> CheckResult:
    expected = {s for s in range(len(d)) if s != d.initial and s not in d.sinks}
    if set(d.failure) != expected:
        return CheckResult("failure_domain", FAILS, "failure defined on the wrong states")
    return CheckResult("failure_domain", HOLDS)


def check_failure_shortcut(d: CmrAutomaton) -> CheckResult:
    bad = []
    for s, f in d.failure.items():
        for a in d.alphabet:
            if not d.is_forward(s, a) and d.delta[s, a] != d.delta[f, a]:
                bad.append(f"delta({d.name(s)},{a}) != delta(f({d.name(s)}),{a})")
    return _verdict("failure_shortcut", bad)


def check_naive_suffix(d: CmrAutomaton) -> CheckResult:
    """Backward targets and failure values against a direct suffix scan."""
    bad = []
    states = d.words
    for (s, a), t in d.delta.items():
        if not d.is_forward(s, a):
            want = oracle.naive_longest_suffix(d.words[s] + (a,), states)
            if want != d.words[t]:
                bad.append(f"delta({d.name(s)},{a}) = {d.name(t)}, scan gives {d.alphabet.show(want)}")
    for s, f in d.failure.items():
        want = oracle.naive_longest_suffix(d.words[s][1:], states)
        if want != d.words[f]:
            bad.append(f"f({d.name(s)}) = {d.name(f)}, scan gives {d.alphabet.show(want)}")
    return _verdict("naive_suffix_agreement", bad)


def check_self_reference(d: CmrAutomaton) -> CheckResult:
    bad = []
    for s, f in d.failure.items():
        w = d.words[s]
        u, a = w[:-1], w[-1]
        lhs = d.words[f] == u
        rhs = all(x == a for x in u)
        if lhs != rhs:
            bad.append(f"f({d.name(s)}) = {d.name(f)}")
    return _verdict("self_reference_law", bad)


def check_delta_monotone(d: CmrAutomaton) -> CheckResult:
    bad = []
    states = sorted(d.failure)
    for u in states:
        for v in states:
            if u != v and is_prefix(d.words[u], d.words[v]):
                if delta_gap(d, u) > delta_gap(d, v):
                    bad.append(f"Delta({d.name(u)}) > Delta({d.name(v)})")
    return _verdict("delta_monotone", bad)


def check_size_bounds(d: CmrAutomaton, gf: LabeledGraph) -> CheckResult:
    total = sum(len(w) for w in d.fset.words)
    bad = []
    if len(d) > 1 + total:
        bad.append(f"|D_F| = {len(d)} > {1 + total}")
    if len(gf) > 1 + total - len(d.fset.words):
        bad.append(f"|G_F| = {len(gf)} > {1 + total - len(d.fset.words)}")
    return _verdict("size_bounds", bad)


def check_fork_uniqueness(d: CmrAutomaton) -> CheckResult:
    f_set = d.fset
    if len(f_set.words) != 2 or not f_set.equal_lengths:
        return _na("fork_uniqueness", "needs two words of equal length")
    forks = [s for s in d.nonsink if edge_counts(d, s)[0] == 2]
    p = d.state(fork_state(f_set))
    if forks != [p]:
        return CheckResult("fork_uniqueness", FAILS,
                           f"two-forward-edge states {[d.name(s) for s in forks]}, fork {d.name(p)}")
    return CheckResult("fork_uniqueness", HOLDS)


def check_path_lemma(d: CmrAutomaton, gf: LabeledGraph) -> CheckResult:
    """Level-by-level form of the path lemma with the initial state as target.

    Once every state up to some level reaches ε, each state one level up
    with a backward edge and either N_f(f(v)) < N_b(v) or Delta(v) >= 2 must
    reach ε too.  Backward edges into sink states vanish from G_F and break
    the counting behind the lemma (F = {a, ccb} over {a, b, c} is a
    counterexample), so such instances are not applicable.
    """
    if any(t in d.sinks and not d.is_forward(s, a) for (s, a), t in d.delta.items()):
        return _na("path_lemma", "a backward edge enters a sink state")
    keep = d.nonsink
    new = {s: i for i, s in enumerate(keep)}
    preds = {i: set() for i in gf.states}
    for s, t, _ in gf.edges:
        preds[t].add(s)
    reach = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for u in preds[v]:
            if u not in reach:
                reach.add(u)
                todo.append(u)
    by_level = {}
    for s in keep:
        by_level.setdefault(len(d.words[s]), []).append(s)
    bad = []
    for level in sorted(by_level):
        if level == 0:
            continue
        if not all(new[s] in reach for lv, ss in by_level.items() if lv < level for s in ss):
            break
        for v in by_level[level]:
            nb = edge_counts(d, v)[1]
            if nb >= 1 and (edge_counts(d, d.failure[v])[0] < nb or delta_gap(d, v) >= 2):
                if new[v] not in reach:
                    bad.append(f"{d.name(v)} cannot reach ε")
    return _verdict("path_lemma", bad)


def check_nf_corollary(d: CmrAutomaton, gf: LabeledGraph) -> CheckResult:
    sigma = len(d.alphabet)
    if sigma < 3:
        return _na("nf_corollary", "alphabet smaller than 3")
    if any(2 * edge_counts(d, s)[0] > sigma - 1 for s in d.nonsink):
        return _na("nf_corollary", "some state has too many forward edges")
    if not is_irreducible_graph(gf):
        return CheckResult("nf_corollary", FAILS, "G_F is not strongly connected")
    return CheckResult("nf_corollary", HOLDS)


def check_equal_length_law(d: CmrAutomaton, gf: LabeledGraph, partition=None) -> CheckResult:
    if not d.fset.equal_lengths:
        return _na("equal_length_law", "forbidden words differ in length")
    partition = partition or follower_partition(gf)
    bad = []
    for block in partition.nontrivial():
        lengths = {len(d.words[d.nonsink[s]]) for s in block}
        if len(lengths) > 1:
            bad.append("merged states " + ", ".join(gf.names[s] for s in sorted(block)))
    return _verdict("equal_length_law", bad)


def structural_checks(d: CmrAutomaton, gf: Optional[LabeledGraph] = None) -> list:
    gf = gf if gf is not None else cmr_presentation(d)
    return [
        check_automaton_shape(d),
        check_incoming_labels(d),
        check_edge_lengths(d),
        check_failure_domain(d),
        check_failure_shortcut(d),
        check_naive_suffix(d),
        check_self_reference(d),
        check_delta_monotone(d),
        check_size_bounds(d, gf),
        check_fork_uniqueness(d),
        check_path_lemma(d, gf),
        check_nf_corollary(d, gf),
        check_equal_length_law(d, gf),
    ]


# --- theorem predicates on a finished CoverReport ----------------------------

def _one_word_shape(w) -> bool:
    """w = x y^(n-1) or x^(n-1) y with x != y."""
    n = len(w)
    if n < 2:
        return False
    head, tail = w[0], w[-1]
    return (head != w[1] and set(w[1:]) == {w[1]}) or (tail != w[-2] and set(w[:-1]) == {w[0]})


def check_shannon_characterization(r: CoverReport) -> CheckResult:
    name = "shannon_characterization"
    if not r.language_irreducible:
        return _na(name, "S_F is reducible")
    if not is_irreducible_graph(r.cover):
        return CheckResult(name, FAILS, "cover is not strongly connected")
    if not follower_partition(r.cover).is_discrete:
        return CheckResult(name, FAILS, "cover is not follower-separated")
    return CheckResult(name, HOLDS)


def check_cover_idempotent(r: CoverReport) -> CheckResult:
    if not follower_partition(r.cover).is_discrete:
        return CheckResult("cover_idempotent", FAILS, "refining the cover merges states")
    return CheckResult("cover_idempotent", HOLDS)


def check_one_word_theorem(r: CoverReport) -> CheckResult:
    name = "one_word_theorem"
    if len(r.f_set.words) != 1:
        return _na(name, "needs exactly one forbidden word")
    if not r.language_irreducible:
        return _na(name, "S_F is reducible")
    n = len(r.f_set.words[0])
    if r.nu != n:
        return CheckResult(name, FAILS, f"nu = {r.nu}, word length {n}")
    if not graphs_isomorphic(r.cover, r.presentation):
        return CheckResult(name, FAILS, "cover is not isomorphic to G_F")
    return CheckResult(name, HOLDS)


def check_one_word_irreducibility(r: CoverReport) -> CheckResult:
    """Binary: reducible exactly for the two exceptional shapes; larger: G_F irreducible."""
    name = "one_word_irreducibility"
    if len(r.f_set.words) != 1:
        return _na(name, "needs exactly one forbidden word")
    w = r.f_set.words[0]
    sigma = len(r.f_set.alphabet)
    if sigma == 2:
        expected = not _one_word_shape(w)
        if r.language_irreducible != expected:
            return CheckResult(name, FAILS, f"S_F reported {'ir' if r.language_irreducible else ''}reducible")
        if expected and not r.graph_irreducible:
            return CheckResult(name, FAILS, "S_F irreducible but G_F is not")
        return CheckResult(name, HOLDS)
    if sigma >= 3:
        if not (r.language_irreducible and r.graph_irreducible):
            return CheckResult(name, FAILS, "G_F is not irreducible")
        return CheckResult(name, HOLDS)
    return _na(name, "unary alphabet")


def _two_word_applicable(r: CoverReport) -> str:
    f = r.f_set
    if len(f.words) != 2 or not f.equal_lengths:
        return "needs two words of equal length"
    if len(f.alphabet) < 3:
        return "alphabet smaller than 3"
    if not r.language_irreducible:
        return "S_F is reducible"
    return ""


def check_two_word_irreducibility(r: CoverReport) -> CheckResult:
    name = "two_word_irreducibility"
    if why := _two_word_applicable(r):
        return _na(name, why)
    if not r.graph_irreducible:
        return CheckResult(name, FAILS, "S_F irreducible but G_F is not")
    return CheckResult(name, HOLDS)


def check_nu_formula(r: CoverReport) -> CheckResult:
    name = "nu_formula"
    if why := _two_word_applicable(r):
        return _na(name, why)
    try:
        z = z_family_analysis(r.f_set, r.automaton)
    except ShapeMismatch:
        return _na(name, "F is not of the form {a^n, a x}")
    if r.nu != z.predicted_nu:
        return CheckResult(name, FAILS, f"nu = {r.nu}, predicted {z.predicted_nu}")
    merged = r.merged_levels
    if merged != list(z.merged_levels):
        return CheckResult(name, FAILS, f"merged levels {merged}, predicted {list(z.merged_levels)}")
    if any(len(b) != 2 for b in r.partition.nontrivial()):
        return CheckResult(name, FAILS, "a merged block is not a pair")
    return CheckResult(name, HOLDS)


def check_nu_bounds(r: CoverReport) -> CheckResult:
    name = "nu_bounds"
    if why := _two_word_applicable(r):
        return _na(name, why)
    lo, hi = cover_size_bounds(r.f_set)
    if not lo <= r.nu <= hi:
        return CheckResult(name, FAILS, f"nu = {r.nu} outside [{lo}, {hi}]")
    return CheckResult(name, HOLDS)


def theorem_checks(r: CoverReport) -> list:
    return [
        check_shannon_characterization(r),
        check_cover_idempotent(r),
        check_one_word_theorem(r),
        check_one_word_irreducibility(r),
        check_two_word_irreducibility(r),
        check_nu_formula(r),
        check_nu_bounds(r),
    ]


# --- oracle cross-checks -----------------------------------------------------

def default_bound(gf: LabeledGraph) -> int:
    return len(gf) + 2


def check_language(r: CoverReport, L: Optional[int] = None) -> CheckResult:
    name = "oracle_language"
    L = default_bound(r.presentation) if L is None else L
    sigma = len(r.f_set.alphabet)
    if sigma ** L <= LITERAL_LIMIT:
        got = oracle.generated_words(r.cover, L).words
        want = oracle.enumerate_language(r.f_set, L).words
        if got != want:
            w = min(got ^ want, key=r.f_set.alphabet.shortlex)
            return CheckResult(name, FAILS, f"L={L}: {r.f_set.alphabet.show(w)}")
        return CheckResult(name, HOLDS)
    w = oracle.language_mismatch(r.cover, r.f_set, L)
    if w is not None:
        return CheckResult(name, FAILS, f"L={L}: {r.f_set.alphabet.show(w)}")
    return CheckResult(name, HOLDS)


def check_debruijn(r: CoverReport) -> CheckResult:
    name = "oracle_debruijn_cover"
    if r.f_set.n_max < 2:
        return _na(name, "longest forbidden word has length 1")
    if not r.language_irreducible:
        return _na(name, "S_F is reducible")
    red = reduce_presentation(oracle.debruijn_presentation(r.f_set), r.f_set)
    if not red.language_irreducible:
        return CheckResult(name, FAILS, "no component of the de Bruijn quotient presents S_F")
    if not graphs_isomorphic(red.cover, r.cover):
        return CheckResult(name, FAILS, f"de Bruijn cover has {len(red.cover)} states, CMR cover {r.nu}")
    return CheckResult(name, HOLDS)


def check_irreducibility_oracle(r: CoverReport, L: Optional[int] = None, B: Optional[int] = None) -> CheckResult:
    name = "oracle_irreducibility"
    n = len(r.presentation)
    L = n if L is None else L
    B = n * n if B is None else B
    witness = oracle.irreducibility_witness(r.f_set, L, B)
    brute = witness is None
    if brute != r.language_irreducible:
        show = r.f_set.alphabet.show
        detail = f"u={show(witness[0])}, w={show(witness[1])}" if witness else "no bounded witness"
        return CheckResult(name, FAILS, f"pipeline says {'ir' if r.language_irreducible else ''}reducible, brute force: {detail}")
    return CheckResult(name, HOLDS)


def check_refinement(r: CoverReport) -> CheckResult:
    """Partition blocks against bounded follower sets (or table-filling when those are huge)."""
    name = "oracle_refinement"
    g = r.presentation
    where = r.partition.block_index()
    k = len(g) - 1
    if len(g.alphabet) ** k <= LITERAL_LIMIT:
        followers = [oracle.follower_words(g, s, k).words for s in g.states]

        def equivalent(s, t):
            return followers[s] == followers[t]
    else:
        marked = oracle.distinguishable_pairs(g)

        def equivalent(s, t):
            return (s, t) not in marked
    bad = []
    for s in g.states:
        for t in g.states:
            if s < t and (where[s] == where[t]) != equivalent(s, t):
                bad.append(f"{g.names[s]} / {g.names[t]}")
    return _verdict(name, bad)


def check_gf_presents(r: CoverReport) -> CheckResult:
    if not presents_language(r.presentation, r.f_set):
        return CheckResult("gf_presents_language", FAILS, "G_F does not present S_F")
    return CheckResult("gf_presents_language", HOLDS)


def oracle_checks(r: CoverReport, L: Optional[int] = None, B: Optional[int] = None) -> list:
    return [
        check_gf_presents(r),
        check_language(r, L),
        check_debruijn(r),
        check_irreducibility_oracle(r, B=B),
        check_refinement(r),
    ]


def run_checks(f_set: ForbiddenSet, bound: Optional[int] = None, connector_bound: Optional[int] = None) -> list:
    """Every applicable predicate for ``f_set``."""
    d = build_cmr_automaton(f_set)
    gf = cmr_presentation(d)
    results = structural_checks(d, gf)
    try:
        report = shannon_cover(f_set)
    except DegenerateLanguage:
        return results + [_na("cover", "S_F = {ε}")]
    return results + report.conformance + oracle_checks(report, bound, connector_bound)
