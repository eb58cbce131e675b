"""Follower-set refinement and the state-merging pipeline for the Shannon cover."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .cmr import CmrAutomaton, build_cmr_automaton, cmr_presentation
from .errors import DegenerateLanguage, NotFollowerSeparated
from .graph import (
    LabeledGraph,
    Partition,
    dump_json,
    induced_subgraph,
    is_irreducible_graph,
    quotient,
    strongly_connected_components,
    to_json_obj,
)
from .words import Alphabet, ForbiddenSet


def _renumber(keys) -> list:
    ids = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def follower_partition(g: LabeledGraph) -> Partition:
    """Coarsest partition into follower-set classes (Moore refinement).

    States start out grouped by outgoing label set, so all edgeless states
    share a block; blocks then split until successors agree label by label.
    """
    symbols = g.alphabet.symbols
    block = _renumber(g.labels(s) for s in g.states)
    count = len(set(block))
    while True:
        sigs = []
        for s in g.states:
            succ = g.successors(s)
            sigs.append((block[s],) + tuple(block[succ[a]] if a in succ else -1 for a in symbols))
        new = _renumber(sigs)
        new_count = len(set(new))
        block = new
        if new_count == count:
            break
        count = new_count
    groups = {}
    for s in g.states:
        groups.setdefault(block[s], []).append(s)
    return Partition(tuple(frozenset(groups[b]) for b in sorted(groups)))


def merge_equivalent(g: LabeledGraph) -> tuple:
    p = follower_partition(g)
    return p, quotient(g, p)


@dataclass
class LanguageReference:
    """D_F plus the Nerode quotient of S_F, pointed at the class of ε.

    Built once per forbidden set and shared by repeated
    :func:`presents_language` calls.
    """

    f_set: ForbiddenSet
    automaton: CmrAutomaton = None
    nerode: LabeledGraph = None
    start: int = 0

    def __post_init__(self):
        if self.automaton is None:
            self.automaton = build_cmr_automaton(self.f_set)
        if self.nerode is None:
            p, self.nerode = merge_equivalent(cmr_presentation(self.automaton))
            self.start = p.block_index()[0]


def presents_language(sub: LabeledGraph, f_set: ForbiddenSet,
                      reference: Optional[LanguageReference] = None) -> bool:
    """True iff the words on paths of ``sub`` (from any state) are exactly S_F."""
    ref = reference or LanguageReference(f_set)
    d = ref.automaton

    # every generated word avoids F: run D_F alongside sub from ε
    seen = set()
    stack = [(s, d.initial) for s in sub.states]
    while stack:
        s, x = stack.pop()
        for a, t in sub.successors(s).items():
            y = d.delta[x, a]
            if y in d.sinks:
                return False
            if (t, y) not in seen:
                seen.add((t, y))
                stack.append((t, y))

    # every word of S_F is generated: track the Nerode class of the word
    # read so far and the set of sub states that can end a path spelling it
    q = ref.nerode
    start = (ref.start, frozenset(sub.states))
    seen = {start}
    queue = deque([start])
    while queue:
        c, ends = queue.popleft()
        for a, c2 in q.successors(c).items():
            ends2 = frozenset(t for s in ends if (t := sub.target(s, a)) is not None)
            if not ends2:
                return False
            node = (c2, ends2)
            if node not in seen:
                seen.add(node)
                queue.append(node)
    return True


@dataclass(frozen=True)
class Reduction:
    partition: Partition
    quotient: LabeledGraph
    cover: LabeledGraph
    language_irreducible: bool
    component: Optional[frozenset] = None  # states of the quotient kept in the cover


def reduce_presentation(g: LabeledGraph, f_set: ForbiddenSet,
                        reference: Optional[LanguageReference] = None) -> Reduction:
    """Merge follower-equivalent states of a presentation ``g`` of S_F.

    If the quotient is not strongly connected, look for a strongly connected
    piece that still presents S_F (largest first) and minimize that instead.
    """
    p, q = merge_equivalent(g)
    if is_irreducible_graph(q):
        return Reduction(p, q, q, True, frozenset(q.states))
    ref = reference or LanguageReference(f_set)
    comps = sorted(strongly_connected_components(q), key=lambda c: (-len(c), min(c)))
    for comp in comps:
        sub = induced_subgraph(q, comp)
        if presents_language(sub, f_set, ref):
            _, cover = merge_equivalent(sub)
            return Reduction(p, q, cover, True, comp)
    return Reduction(p, q, q, False)


@dataclass
class CoverReport:
    f_set: ForbiddenSet
    automaton: CmrAutomaton
    presentation: LabeledGraph  # G_F
    quotient: LabeledGraph
    cover: LabeledGraph
    partition: Partition  # over G_F
    graph_irreducible: bool
    language_irreducible: bool
    conformance: list = field(default_factory=list)

    @property
    def nu(self) -> int:
        return len(self.cover)

    @property
    def cover_guaranteed_minimal(self) -> bool:
        return self.language_irreducible

    def level(self, s: int) -> int:
        """Word length of G_F state ``s``."""
        return len(self.automaton.words[self.automaton.nonsink[s]])

    @property
    def merged_levels(self) -> list:
        return sorted({self.level(min(b)) for b in self.partition.nontrivial()})

    def to_json_obj(self) -> dict:
        obj = to_json_obj(self.cover)
        obj["nu"] = self.nu
        obj["graph_irreducible"] = self.graph_irreducible
        obj["language_irreducible"] = self.language_irreducible
        obj["cover_guaranteed_minimal"] = self.cover_guaranteed_minimal
        obj["partition"] = [sorted(b) for b in self.partition.blocks]
        obj["partition_words"] = [[self.presentation.names[s] for s in sorted(b)]
                                  for b in self.partition.blocks]
        obj["conformance"] = [{"name": c.name, "holds": c.status == "holds"}
                              for c in self.conformance if c.status != "not-applicable"]
        return obj

    def to_json(self) -> bytes:
        return dump_json(self.to_json_obj())

    def summary(self) -> str:
        lines = [
            str(self.f_set),
            f"G_F states: {len(self.presentation)}   (D_F states: {len(self.automaton)})",
            f"Shannon cover states (nu_F): {self.nu}",
            f"G_F irreducible as a graph: {'yes' if self.graph_irreducible else 'no'}",
            f"S_F irreducible: {'yes' if self.language_irreducible else 'no'}",
        ]
        if not self.language_irreducible:
            lines.append("cover is the follower-set quotient of G_F; minimality not guaranteed")
        merged = self.partition.nontrivial()
        if merged:
            for b in merged:
                names = ", ".join(self.presentation.names[s] for s in sorted(b))
                lines.append(f"merged at level {self.level(min(b))}: {{{names}}}")
        else:
            lines.append("no states merged")
        for c in self.conformance:
            if c.status != "not-applicable":
                lines.append(f"  [{'ok' if c.status == 'holds' else 'FAIL'}] {c.name}")
        return "\n".join(lines)


def shannon_cover(f_set: ForbiddenSet) -> CoverReport:
    if f_set.is_degenerate:
        raise DegenerateLanguage(f"every symbol is forbidden; S_F = {{ε}} for {f_set}")
    d = build_cmr_automaton(f_set)
    gf = cmr_presentation(d)
    ref = LanguageReference(f_set, d)
    red = reduce_presentation(gf, f_set, ref)
    report = CoverReport(f_set, d, gf, red.quotient, red.cover, red.partition,
                         is_irreducible_graph(gf), red.language_irreducible)
    from .checks import theorem_checks
    report.conformance = theorem_checks(report)
    return report


def is_language_irreducible(f_set: ForbiddenSet) -> bool:
    if f_set.is_degenerate:
        raise DegenerateLanguage(f"every symbol is forbidden; S_F = {{ε}} for {f_set}")
    d = build_cmr_automaton(f_set)
    return reduce_presentation(cmr_presentation(d), f_set, LanguageReference(f_set, d)).language_irreducible


def _union(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    symbols = g.alphabet.symbols + tuple(a for a in h.alphabet if a not in g.alphabet)
    k = len(g)
    edges = g.edges + tuple((s + k, t + k, a) for s, t, a in h.edges)
    return LabeledGraph(Alphabet(symbols), g.names + h.names, edges)


def isomorphism(g: LabeledGraph, h: LabeledGraph) -> Optional[dict]:
    """Label-preserving state bijection g -> h, or None."""
    for x in (g, h):
        if not follower_partition(x).is_discrete:
            raise NotFollowerSeparated("isomorphism test needs follower-separated graphs")
    if len(g) != len(h) or len(g.edges) != len(h.edges):
        return None
    k = len(g)
    mapping = {}
    for block in follower_partition(_union(g, h)).blocks:
        left = [s for s in block if s < k]
        right = [s - k for s in block if s >= k]
        if len(left) != 1 or len(right) != 1:
            return None
        mapping[left[0]] = right[0]
    for s, t, a in g.edges:
        if h.target(mapping[s], a) != mapping[t]:
            return None
    return mapping


def graphs_isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    return isomorphism(g, h) is not None
