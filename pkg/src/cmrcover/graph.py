"""Deterministic labeled digraphs: assembly, connectivity, quotients, I/O."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    DanglingEdge,
    InconsistentBlock,
    InvalidPartition,
    NondeterministicState,
    ParseError,
    UnknownLabel,
)
from .words import Alphabet


@dataclass(frozen=True)
class LabeledGraph:
    """States are ``0..n-1``; ``names[i]`` is the display word of state ``i``."""

    alphabet: Alphabet
    names: tuple
    edges: tuple  # (source, target, label), sorted by (source, label order)
    sinks: frozenset = frozenset()
    _succ: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        succ = [dict() for _ in self.names]
        for s, t, a in self.edges:
            succ[s][a] = t
        object.__setattr__(self, "_succ", tuple(succ))

    def __len__(self):
        return len(self.names)

    @property
    def states(self) -> range:
        return range(len(self.names))

    def successors(self, s: int) -> Mapping[str, int]:
        return self._succ[s]

    def target(self, s: int, label: str) -> Optional[int]:
        return self._succ[s].get(label)

    def labels(self, s: int) -> tuple:
        return tuple(a for a in self.alphabet if a in self._succ[s])

    def state_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None


def assemble_graph(states: Sequence[str], edges: Iterable, alphabet: Alphabet, sinks=()) -> LabeledGraph:
    """Build a graph from display names and ``(source, target, label)`` triples.

    Endpoints may be given as state indices or as display names.
    """
    names = tuple(states)
    lookup = {name: i for i, name in enumerate(names)}
    n = len(names)

    def resolve(x):
        if isinstance(x, int) and not isinstance(x, bool):
            if 0 <= x < n:
                return x
        elif x in lookup:
            return lookup[x]
        raise DanglingEdge(f"edge endpoint {x!r} is not a declared state")

    seen = {}
    for s, t, a in edges:
        s, t = resolve(s), resolve(t)
        if a not in alphabet:
            raise UnknownLabel(f"label {a!r} is not in alphabet {alphabet.symbols}")
        if (s, a) in seen and seen[s, a] != t:
            raise NondeterministicState(names[s], a)
        seen[s, a] = t
    ordered = tuple(sorted(((s, t, a) for (s, a), t in seen.items()),
                           key=lambda e: (e[0], alphabet.index(e[2]))))
    return LabeledGraph(alphabet, names, ordered, frozenset(resolve(x) for x in sinks))


@dataclass(frozen=True)
class Partition:
    blocks: tuple  # of frozensets, ordered by smallest member

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]], n: Optional[int] = None) -> "Partition":
        bs = [frozenset(b) for b in blocks]
        if any(not b for b in bs):
            raise InvalidPartition("partition blocks must be nonempty")
        union = frozenset().union(*bs)
        if sum(len(b) for b in bs) != len(union):
            raise InvalidPartition("partition blocks overlap")
        if n is not None and union != frozenset(range(n)):
            raise InvalidPartition(f"partition does not cover states 0..{n - 1}")
        return cls(tuple(sorted(bs, key=min)))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple(frozenset([i]) for i in range(n)))

    def __len__(self):
        return len(self.blocks)

    def block_index(self) -> dict:
        return {s: i for i, b in enumerate(self.blocks) for s in b}

    @property
    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def nontrivial(self) -> list:
        return [b for b in self.blocks if len(b) > 1]


def strongly_connected_components(g: LabeledGraph) -> list:
    """Tarjan's algorithm, iterative; components ordered by smallest member."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in g.states:
        if root in index:
            continue
        work = [(root, iter(g.successors(root).values()))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w).values())))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return sorted(comps, key=min)


def is_irreducible_graph(g: LabeledGraph) -> bool:
    # a one-state graph counts as irreducible even without a self-loop
    if len(g) <= 1:
        return True
    comps = strongly_connected_components(g)
    return len(comps) == 1


def reachable_from(g: LabeledGraph, start: Iterable[int]) -> frozenset:
    seen = set(start)
    todo = list(seen)
    while todo:
        v = todo.pop()
        for w in g.successors(v).values():
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return frozenset(seen)


def induced_subgraph(g: LabeledGraph, keep: Iterable[int]) -> LabeledGraph:
    """Restrict to ``keep`` (renumbered in original order), dropping edges that leave it."""
    kept = sorted(set(keep))
    new = {s: i for i, s in enumerate(kept)}
    edges = tuple((new[s], new[t], a) for s, t, a in g.edges if s in new and t in new)
    return LabeledGraph(g.alphabet, tuple(g.names[s] for s in kept), edges,
                        frozenset(new[s] for s in g.sinks if s in new))


def quotient(g: LabeledGraph, p: Partition) -> LabeledGraph:
    """Merge each block of ``p`` into one state.

    Blocks must be merge-consistent.  The merged state takes the display name
    of its smallest member.
    """
    p = Partition.of(p.blocks, len(g))
    where = p.block_index()
    edges = []
    for bi, block in enumerate(p.blocks):
        members = sorted(block)
        rep = members[0]
        labels = g.labels(rep)
        for s in members[1:]:
            if g.labels(s) != labels:
                diff = set(labels) ^ set(g.labels(s))
                raise InconsistentBlock(block, min(diff, key=g.alphabet.index))
        for a in labels:
            targets = {where[g.target(s, a)] for s in members}
            if len(targets) != 1:
                raise InconsistentBlock(block, a)
            edges.append((bi, targets.pop(), a))
    names = tuple(g.names[min(b)] for b in p.blocks)
    sinks = frozenset(bi for bi, b in enumerate(p.blocks) if b <= g.sinks)
    return LabeledGraph(g.alphabet, names, tuple(edges), sinks)


# --- serialization ---------------------------------------------------------

def to_json_obj(g: LabeledGraph, failure: Optional[Mapping[int, int]] = None) -> dict:
    obj = {
        "alphabet": list(g.alphabet.symbols),
        "states": [{"id": i, "word": name, "sink": i in g.sinks} for i, name in enumerate(g.names)],
        "edges": [{"from": s, "to": t, "label": a} for s, t, a in g.edges],
    }
    if failure is not None:
        obj["failure"] = [{"state": s, "to": failure[s]} for s in sorted(failure)]
    return obj


def dump_json(obj) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: LabeledGraph, failure: Optional[Mapping[int, int]] = None) -> str:
    lines = ["digraph {", "  rankdir=LR;", "  // alphabet: " + " ".join(g.alphabet.symbols)]
    for i, name in enumerate(g.names):
        shape = "box" if i in g.sinks else "circle"
        lines.append(f"  n{i} [label={_quote(name)}, shape={shape}];")
    for s, t, a in g.edges:
        lines.append(f"  n{s} -> n{t} [label={_quote(a)}];")
    if failure is not None:
        lines.append("  // failure")
        for s in sorted(failure):
            lines.append(f"  n{s} -> n{failure[s]} [style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(g: LabeledGraph, format: str = "json", failure: Optional[Mapping[int, int]] = None) -> bytes:
    if format == "json":
        return dump_json(to_json_obj(g, failure))
    if format == "dot":
        return to_dot(g, failure).encode("utf-8")
    raise ValueError(f"unknown format {format!r}")


def from_json_obj(obj: Mapping) -> tuple:
    """Inverse of :func:`to_json_obj`; returns ``(graph, failure_or_None)``."""
    try:
        alphabet = Alphabet(tuple(obj["alphabet"]))
        states = sorted(obj["states"], key=lambda s: s["id"])
        if [s["id"] for s in states] != list(range(len(states))):
            raise ParseError("state ids must be 0..n-1")
        g = assemble_graph([s["word"] for s in states],
                           [(e["from"], e["to"], e["label"]) for e in obj["edges"]],
                           alphabet, [s["id"] for s in states if s["sink"]])
        failure = None
        if "failure" in obj:
            failure = {f["state"]: f["to"] for f in obj["failure"]}
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph JSON: {exc!r}") from None
    return g, failure


_NODE = re.compile(r'^n(\d+) \[label="((?:[^"\\]|\\.)*)", shape=(box|circle)\];$')
_EDGE = re.compile(r'^n(\d+) -> n(\d+) \[label="((?:[^"\\]|\\.)*)"\];$')
_FAIL = re.compile(r'^n(\d+) -> n(\d+) \[style=dotted\];$')


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


def from_dot(text: str) -> tuple:
    """Parse DOT produced by :func:`to_dot` (not general Graphviz input)."""
    alphabet = None
    nodes, edges, failure = {}, [], None
    sinks = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line in ("digraph {", "}", "rankdir=LR;"):
            continue
        if line == "// failure":
            failure = {}
        elif line.startswith("// alphabet:"):
            alphabet = Alphabet(tuple(line[len("// alphabet:"):].split()))
        elif m := _NODE.match(line):
            i = int(m.group(1))
            nodes[i] = _unquote(m.group(2))
            if m.group(3) == "box":
                sinks.append(i)
        elif m := _EDGE.match(line):
            edges.append((int(m.group(1)), int(m.group(2)), _unquote(m.group(3))))
        elif (m := _FAIL.match(line)) and failure is not None:
            failure[int(m.group(1))] = int(m.group(2))
        else:
            raise ParseError(f"unrecognized DOT line: {line!r}")
    if alphabet is None:
        raise ParseError("DOT input lacks the '// alphabet:' comment")
    if sorted(nodes) != list(range(len(nodes))):
        raise ParseError("node ids must be n0..n(k-1)")
    g = assemble_graph([nodes[i] for i in range(len(nodes))], edges, alphabet, sinks)
    return g, failure
