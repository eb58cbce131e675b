"""The CMR automaton D_F, its presentation G_F, and the two-word analysis.

D_F has one state per prefix of a forbidden word.  Forward edges extend the
prefix; every other edge goes to the longest suffix that is again a state,
found through the failure function exactly as in Aho-Corasick.  Deleting
the sink states (the forbidden words themselves) leaves G_F, a deterministic
presentation of the words avoiding F.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    AlphabetTooSmall,
    FailureUndefined,
    NotTwoWords,
    ShapeMismatch,
    SinkHasNoEdges,
    UnequalLengths,
)
from .graph import LabeledGraph
from .words import ForbiddenSet, Word, WordLike, prefix_suffix_stats


@dataclass(frozen=True)
class CmrAutomaton:
    fset: ForbiddenSet
    words: tuple  # state id -> word, shortlex order, 0 is ε
    delta: dict  # (state, symbol) -> state, defined on non-sink states
    failure: dict  # state -> state, defined off {ε} ∪ F
    forward: frozenset  # (state, symbol) pairs carrying forward edges
    sinks: frozenset
    index: dict = field(repr=False, compare=False)

    initial = 0

    @property
    def alphabet(self):
        return self.fset.alphabet

    def __len__(self):
        return len(self.words)

    def state(self, w: WordLike) -> int:
        if isinstance(w, int):
            return w
        word = self.alphabet.word(w)
        try:
            return self.index[word]
        except KeyError:
            raise KeyError(f"{self.alphabet.show(word)} is not a state") from None

    def name(self, s: int) -> str:
        return self.alphabet.show(self.words[s])

    @property
    def nonsink(self) -> tuple:
        """D_F ids of the states kept in G_F, in order; G_F state i is ``nonsink[i]``."""
        return tuple(s for s in range(len(self.words)) if s not in self.sinks)

    def is_forward(self, s: int, a: str) -> bool:
        return (s, a) in self.forward

    @property
    def graph(self) -> LabeledGraph:
        edges = tuple((s, self.delta[s, a], a)
                      for s in range(len(self.words)) if s not in self.sinks
                      for a in self.alphabet)
        return LabeledGraph(self.alphabet, tuple(self.name(s) for s in range(len(self.words))),
                            edges, self.sinks)


def build_cmr_automaton(f_set: ForbiddenSet) -> CmrAutomaton:
    alphabet = f_set.alphabet
    prefixes = {w[:i] for w in f_set.words for i in range(len(w) + 1)}
    words = tuple(sorted(prefixes, key=alphabet.shortlex))
    index = {w: i for i, w in enumerate(words)}
    sinks = frozenset(index[w] for w in f_set.words)

    delta, failure, forward = {}, {}, set()
    # shortlex order is breadth-first by length, so f(u) and the transitions
    # out of f(u) are final before u is processed
    for u, word in enumerate(words):
        if u in sinks:
            continue
        for a in alphabet:
            v = index.get(word + (a,))
            if v is not None:
                delta[u, a] = v
                forward.add((u, a))
                if v not in sinks:
                    failure[v] = 0 if u == 0 else delta[failure[u], a]
            else:
                delta[u, a] = 0 if u == 0 else delta[failure[u], a]
    return CmrAutomaton(f_set, words, delta, failure, frozenset(forward), sinks, index)


def cmr_presentation(d: CmrAutomaton) -> LabeledGraph:
    keep = d.nonsink
    new = {s: i for i, s in enumerate(keep)}
    edges = tuple((new[s], new[d.delta[s, a]], a)
                  for s in keep for a in d.alphabet if d.delta[s, a] in new)
    return LabeledGraph(d.alphabet, tuple(d.name(s) for s in keep), edges)


def presentation_failure(d: CmrAutomaton) -> dict:
    """The failure map renumbered onto G_F state ids (the dotted edges of G_F)."""
    new = {s: i for i, s in enumerate(d.nonsink)}
    return {new[s]: new[t] for s, t in d.failure.items()}


def delta_gap(d: CmrAutomaton, u: WordLike) -> int:
    s = d.state(u)
    if s not in d.failure:
        raise FailureUndefined(f"failure function is undefined at {d.name(s)}")
    return len(d.words[s]) - len(d.words[d.failure[s]])


def edge_counts(d: CmrAutomaton, v: WordLike) -> tuple:
    """(forward, backward) edge counts out of ``v`` in D_F."""
    s = d.state(v)
    if s in d.sinks:
        raise SinkHasNoEdges(f"{d.name(s)} is a sink state")
    nf = sum(1 for a in d.alphabet if (s, a) in d.forward)
    return nf, len(d.alphabet) - nf


def _two_equal_words(f_set: ForbiddenSet) -> tuple:
    if len(f_set.words) != 2:
        raise NotTwoWords(f"expected exactly two forbidden words, got {len(f_set.words)}")
    w1, w2 = f_set.words
    if len(w1) != len(w2):
        raise UnequalLengths(f"forbidden words have lengths {len(w1)} and {len(w2)}")
    return w1, w2


def fork_state(f_set: ForbiddenSet) -> Word:
    w1, w2 = _two_equal_words(f_set)
    rho, _ = prefix_suffix_stats(w1, w2)
    return w1[:rho]


def cover_size_bounds(f_set: ForbiddenSet) -> tuple:
    w1, w2 = _two_equal_words(f_set)
    if len(f_set.alphabet) < 3:
        raise AlphabetTooSmall("state-count bounds are only established for alphabets of size >= 3")
    n = len(w1)
    rho, sigma = prefix_suffix_stats(w1, w2)
    return 2 * n - rho - sigma - 1, 2 * n - rho - 1


@dataclass(frozen=True)
class Z2Analysis:
    """Run structure of ``z2 = a^x1 b1 a^x2 ... b(q-1) a^xq`` against ``z1 = a^n``.

    ``ind_f``, ``chi``, ``x_star`` and ``merge_level`` are only computed in the
    ``x1 < xq`` branch and are ``None`` otherwise.
    """

    symbol: str
    z1: Word
    z2: Word
    n: int
    x_runs: tuple
    betas: tuple
    p_prefixes: tuple  # p_0 = a, p_1, ... (those that are states of G_F)
    ind_f: Optional[frozenset]
    chi: Optional[frozenset]
    x_star: Optional[int]
    merge_level: Optional[int]
    predicted_nu: int

    @property
    def q(self) -> int:
        return len(self.x_runs)

    @property
    def follower_separated(self) -> bool:
        return self.x_runs[0] >= self.x_runs[-1]

    @property
    def merged_levels(self) -> tuple:
        if self.merge_level is None:
            return ()
        return tuple(range(self.merge_level, self.n))

    def reconstruct(self) -> Word:
        out = ()
        for i, x in enumerate(self.x_runs):
            out += (self.symbol,) * x
            if i < len(self.betas):
                out += self.betas[i]
        return out


def _run_factorization(z2: Word, a: str) -> tuple:
    n = len(z2)
    runs, betas = [], []
    i = 0
    while True:
        j = i
        while j < n and z2[j] == a:
            j += 1
        runs.append(j - i)
        if j == n:
            break
        i = j
        while j < n and z2[j] != a:
            j += 1
        betas.append(z2[i:j])
        i = j
        if i == n:
            runs.append(0)
            break
    return tuple(runs), tuple(betas)


def z_family_analysis(f_set: ForbiddenSet, automaton: Optional[CmrAutomaton] = None) -> Z2Analysis:
    """Predict the Shannon cover size for ``F = {a^n, a x}``."""
    try:
        w1, w2 = _two_equal_words(f_set)
    except (NotTwoWords, UnequalLengths) as exc:
        raise ShapeMismatch(str(exc)) from None
    z1 = z2 = None
    for u, v in ((w1, w2), (w2, w1)):
        if len(set(u)) == 1 and v[0] == u[0]:
            z1, z2 = u, v
    if z1 is None:
        raise ShapeMismatch(f"{f_set.show()} is not of the form {{a^n, a x}}")
    if len(f_set.alphabet) < 3:
        raise AlphabetTooSmall("the two-word cover results are stated for alphabets of size >= 3")

    a, n = z1[0], len(z1)
    runs, betas = _run_factorization(z2, a)
    x1, xq = runs[0], runs[-1]

    p_lengths = [1]
    acc = 0
    for j in range(len(betas)):
        acc += runs[j] + len(betas[j])
        p_lengths.append(acc + 1)
    p_prefixes = tuple(z2[:k] for k in p_lengths if k < n)

    if x1 >= xq:
        return Z2Analysis(a, z1, z2, n, runs, betas, p_prefixes,
                          None, None, None, None, 2 * n - x1 - 1)

    d = automaton or build_cmr_automaton(f_set)
    position = {d.state(p): j for j, p in enumerate(p_prefixes)}
    last = d.state(p_prefixes[-1])
    p0 = d.state(p_prefixes[0])
    ind = set()
    u = last
    for _ in range(n):
        u = d.failure[u]
        if u in position:
            ind.add(position[u])
        if u == p0:
            break
    else:
        raise RuntimeError("failure iteration did not reach p_0")
    chi = frozenset(runs[k] for k in ind if k > 0 and x1 <= runs[k] < xq)
    x_star = max(chi) if chi else x1 - 1
    merge_level = len(p_prefixes[-1]) + x_star
    return Z2Analysis(a, z1, z2, n, runs, betas, p_prefixes,
                      frozenset(ind), chi, x_star, merge_level,
                      2 * n - x1 - (xq - x_star))
