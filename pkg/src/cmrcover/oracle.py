"""Slow reference implementations used to cross-check the fast paths.

Nothing here touches the CMR automaton.  Forbidden-factor detection is done
by explicit suffix scans over word tuples, so a bug in the failure-function
construction cannot hide behind a matching bug in its checker.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .errors import OrderTooSmall
from .graph import LabeledGraph, assemble_graph
from .words import EPSILON, ForbiddenSet, Word, is_subword


@dataclass(frozen=True)
class BoundedLanguage:
    words: frozenset
    bound: int

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return tuple(w) in self.words

    def by_length(self) -> list:
        counts = [0] * (self.bound + 1)
        for w in self.words:
            counts[len(w)] += 1
        return counts

    def sorted_words(self, alphabet) -> list:
        return sorted(self.words, key=alphabet.shortlex)

    def to_json(self, alphabet) -> str:
        return json.dumps(["".join(w) if alphabet.single_char else " ".join(w)
                           for w in self.sorted_words(alphabet)], ensure_ascii=False)


def naive_longest_suffix(u: Iterable[str], candidates: Iterable[Word]) -> Word:
    u = tuple(u)
    best = EPSILON
    for c in candidates:
        c = tuple(c)
        if len(c) > len(best) and len(c) <= len(u) and u[len(u) - len(c):] == c:
            best = c
    return best


def _suffix_test(f_set: ForbiddenSet):
    """Predicate: does a word end with a member of F?"""
    words = set(f_set.words)
    lengths = sorted({len(f) for f in words})

    def ends_forbidden(w):
        return any(k <= len(w) and w[len(w) - k:] in words for k in lengths)
    return ends_forbidden


def contains_forbidden(w: Iterable[str], f_set: ForbiddenSet) -> bool:
    w = tuple(w)
    return any(is_subword(f, w) for f in f_set.words)


def enumerate_language(f_set: ForbiddenSet, L: int) -> BoundedLanguage:
    """All words of length <= L avoiding F, by breadth-first extension."""
    ends_forbidden = _suffix_test(f_set)
    words = {EPSILON}
    frontier = [EPSILON]
    for _ in range(L):
        nxt = []
        for w in frontier:
            for a in f_set.alphabet:
                wa = w + (a,)
                # only factors ending at the new symbol can be new
                if not ends_forbidden(wa):
                    nxt.append(wa)
        words.update(nxt)
        frontier = nxt
    return BoundedLanguage(frozenset(words), L)


def generated_words(g: LabeledGraph, L: int, start: Optional[Iterable[int]] = None) -> BoundedLanguage:
    """Words of length <= L read along paths of ``g`` (from every state by default)."""
    frontier = {EPSILON: frozenset(g.states if start is None else start)}
    words = {EPSILON}
    for _ in range(L):
        nxt = {}
        for w, ends in frontier.items():
            for a in g.alphabet:
                tgt = frozenset(t for s in ends if (t := g.target(s, a)) is not None)
                if tgt:
                    nxt[w + (a,)] = tgt
        words.update(nxt)
        frontier = nxt
    return BoundedLanguage(frozenset(words), L)


def follower_words(g: LabeledGraph, s: int, k: int) -> BoundedLanguage:
    return generated_words(g, k, start=[s])


def brute_equivalent(g: LabeledGraph, s: int, t: int, depth: Optional[int] = None) -> bool:
    k = len(g) - 1 if depth is None else depth
    return follower_words(g, s, k).words == follower_words(g, t, k).words


def distinguishable_pairs(g: LabeledGraph) -> set:
    """Table-filling: all unordered pairs with different follower sets.

    Polynomial alternative to :func:`brute_equivalent` for graphs whose
    bounded follower sets are too large to list.
    """
    states = list(g.states)
    marked = set()
    for i in states:
        for j in states:
            if i < j and g.labels(i) != g.labels(j):
                marked.add((i, j))
    changed = True
    while changed:
        changed = False
        for i in states:
            for j in states:
                if i >= j or (i, j) in marked:
                    continue
                for a in g.labels(i):
                    x, y = sorted((g.target(i, a), g.target(j, a)))
                    if x != y and (x, y) in marked:
                        marked.add((i, j))
                        changed = True
                        break
    return marked


def debruijn_presentation(f_set: ForbiddenSet, strict: bool = False) -> LabeledGraph:
    """The higher edge graph: states are the allowed words of length n_max - 1."""
    alphabet = f_set.alphabet
    order = f_set.n_max - 1
    if order < 1:
        if strict:
            raise OrderTooSmall("the higher edge graph needs a longest forbidden word of length >= 2")
        # every forbidden word is a single symbol: one state, a loop per allowed symbol
        allowed = [a for a in alphabet if (a,) not in f_set.words]
        return assemble_graph([alphabet.show(EPSILON)], [(0, 0, a) for a in allowed], alphabet)
    ends_forbidden = _suffix_test(f_set)
    # product() yields windows in alphabet order, so ids and edges come out sorted
    windows = [w for w in product(alphabet.symbols, repeat=order) if not contains_forbidden(w, f_set)]
    index = {w: i for i, w in enumerate(windows)}
    edges = tuple((index[u], index[u[1:] + (a,)], a)
                  for u in windows for a in alphabet if not ends_forbidden(u + (a,)))
    return LabeledGraph(alphabet, tuple(alphabet.show(w) for w in windows), edges)


class SuffixScanner:
    """Naive context automaton for F: the context of a word is its longest
    suffix that is a proper prefix of some forbidden word.

    Whether a continuation creates a forbidden factor depends only on this
    context, which keeps the bounded searches below finite.
    """

    def __init__(self, f_set: ForbiddenSet):
        self.f_set = f_set
        self.forbidden = set(f_set.words)
        self.prefixes = {w[:i] for w in f_set.words for i in range(len(w) + 1)}
        self._memo = {}
        self._ends_forbidden = _suffix_test(f_set)

    def step(self, context: Word, a: str) -> Optional[Word]:
        """Next context, or None if appending ``a`` completes a forbidden word."""
        key = (context, a)
        if key not in self._memo:
            x = context + (a,)
            if self._ends_forbidden(x):
                self._memo[key] = None
            else:
                self._memo[key] = naive_longest_suffix(x, self.prefixes - self.forbidden)
        return self._memo[key]


def language_mismatch(g: LabeledGraph, f_set: ForbiddenSet, L: int) -> Optional[Word]:
    """Shortest word of length <= L in exactly one of S(g) and S_F, or None.

    Equivalent to comparing ``generated_words(g, L)`` with
    ``enumerate_language(f_set, L)`` but explores product states instead of
    words, so it stays cheap when both languages are large.
    """
    scanner = SuffixScanner(f_set)
    start = (frozenset(g.states), EPSILON)
    seen = {start}
    queue = deque([(start, EPSILON)])
    while queue:
        (ends, ctx), w = queue.popleft()
        if len(w) >= L:
            continue
        for a in f_set.alphabet:
            nxt_ends = frozenset(t for s in ends if (t := g.target(s, a)) is not None)
            nxt_ctx = scanner.step(ctx, a)
            if bool(nxt_ends) != (nxt_ctx is not None):
                return w + (a,)
            if nxt_ctx is None:
                continue
            node = (nxt_ends, nxt_ctx)
            if node not in seen:
                seen.add(node)
                queue.append((node, w + (a,)))
    return None


def irreducibility_witness(f_set: ForbiddenSet, L: int, B: int) -> Optional[tuple]:
    """A pair (u, w) of allowed words, each of length <= L, with no connector
    v of length <= B making uvw allowed; None if every pair connects.
    """
    scanner = SuffixScanner(f_set)
    alphabet = f_set.alphabet

    # contexts of allowed words u, |u| <= L, with a representative u each
    u_reps = {EPSILON: EPSILON}
    queue = deque([EPSILON])
    while queue:
        ctx = queue.popleft()
        u = u_reps[ctx]
        if len(u) >= L:
            continue
        for a in alphabet:
            nxt = scanner.step(ctx, a)
            if nxt is not None and nxt not in u_reps:
                u_reps[nxt] = u + (a,)
                queue.append(nxt)
    # a later u with the same context behaves identically, but a shorter
    # representative can only reach more, so keep the BFS-first one; any
    # context reachable in <= L steps has a representative of length <= L

    # for each allowed w, |w| <= L: the set of contexts c with c·w allowed
    contexts = sorted(u_reps, key=alphabet.shortlex)
    start = tuple((c, c) for c in contexts)  # (origin, current)
    w_sets = {}
    seen = {start}
    queue = deque([(start, EPSILON)])
    while queue:
        state, w = queue.popleft()
        origins = frozenset(o for o, _ in state)
        if EPSILON in origins:
            w_sets.setdefault(origins, w)
        if len(w) >= L:
            continue
        for a in alphabet:
            nxt = tuple((o, c2) for o, c in state if (c2 := scanner.step(c, a)) is not None)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, w + (a,)))

    def within(ctx):
        reach = {ctx}
        frontier = [ctx]
        for _ in range(B):
            nxt = []
            for c in frontier:
                for a in alphabet:
                    c2 = scanner.step(c, a)
                    if c2 is not None and c2 not in reach:
                        reach.add(c2)
                        nxt.append(c2)
            if not nxt:
                break
            frontier = nxt
        return reach

    # shortlex-first w, then shortlex-first u
    reach = {ctx: within(ctx) for ctx in contexts}
    for origins, w in sorted(w_sets.items(), key=lambda kv: alphabet.shortlex(kv[1])):
        for ctx in contexts:
            if not (reach[ctx] & origins):
                return u_reps[ctx], w
    return None


def brute_language_irreducible(f_set: ForbiddenSet, L: int, B: int) -> bool:
    """Bounded falsifier: False is conclusive, True only says no (L, B) witness exists."""
    return irreducibility_witness(f_set, L, B) is None


def naive_irreducibility_witness(f_set: ForbiddenSet, L: int, B: int) -> Optional[tuple]:
    """Same predicate by literal enumeration of u, v, w; for tiny bounds only."""
    lang = enumerate_language(f_set, max(L, B))
    short = sorted((w for w in lang.words if len(w) <= L), key=f_set.alphabet.shortlex)
    connectors = sorted((v for v in lang.words if len(v) <= B), key=f_set.alphabet.shortlex)
    for w in short:
        for u in short:
            if not any(not contains_forbidden(u + v + w, f_set) for v in connectors):
                return u, w
    return None
