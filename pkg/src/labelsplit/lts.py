"""Deterministic labelled transition systems.

An LTS here is finite, deterministic (at most one edge per state/label pair)
and reachable from its initial state. States and labels are strings; edges
keep a canonical order (order of first appearance), and everything downstream
(spanning trees, Parikh vectors, splitting witnesses) is indexed against that
order, so two structurally equal systems behave identically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

from .linalg import RatMatrix, RatVector, rref


class Edge(NamedTuple):
    source: str
    label: str
    target: str


@dataclass(frozen=True)
class Lts:
    """A labelled transition system with canonical state/label/edge order."""

    states: tuple[str, ...]
    labels: tuple[str, ...]
    edges: tuple[Edge, ...]
    initial: str

    @classmethod
    def from_edges(
        cls,
        initial: str,
        edges: Iterable[tuple[str, str, str]],
        labels: Sequence[str] | None = None,
    ) -> "Lts":
        """Build with first-use ordering: initial state first, then states and
        labels in order of first appearance along the edge list. An explicit
        `labels` sequence overrides the derived one (it must cover all used
        labels)."""
        edge_tuples = tuple(Edge(*e) for e in edges)
        states: list[str] = [initial]
        seen_states = {initial}
        used: list[str] = []
        seen_labels: set[str] = set()
        for e in edge_tuples:
            for s in (e.source, e.target):
                if s not in seen_states:
                    seen_states.add(s)
                    states.append(s)
            if e.label not in seen_labels:
                seen_labels.add(e.label)
                used.append(e.label)
        if labels is None:
            label_tuple = tuple(used)
        else:
            label_tuple = tuple(labels)
            missing = seen_labels - set(label_tuple)
            if missing:
                raise ValueError(f"labels argument misses used labels: {sorted(missing)}")
        return cls(tuple(states), label_tuple, edge_tuples, initial)

    def label_index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.labels)}

    def out_map(self) -> dict[tuple[str, str], int]:
        """(source, label) -> edge index; assumes the LTS is deterministic."""
        return {(e.source, e.label): i for i, e in enumerate(self.edges)}


# --- validation ---------------------------------------------------------


@dataclass(frozen=True)
class Nondeterministic:
    source: str
    label: str

    def __str__(self) -> str:
        return f"nondeterministic: two edges from {self.source} with label {self.label}"


@dataclass(frozen=True)
class Unreachable:
    state: str

    def __str__(self) -> str:
        return f"unreachable state: {self.state}"


@dataclass(frozen=True)
class Dangling:
    detail: str

    def __str__(self) -> str:
        return f"dangling reference: {self.detail}"


Violation = Union[Nondeterministic, Unreachable, Dangling]


def validate(lts: Lts) -> list[Violation]:
    """All structural violations; an empty list means the LTS is well formed."""
    problems: list[Violation] = []
    state_set = set(lts.states)
    label_set = set(lts.labels)
    if len(state_set) != len(lts.states):
        problems.append(Dangling("duplicate state declaration"))
    if len(label_set) != len(lts.labels):
        problems.append(Dangling("duplicate label declaration"))
    if lts.initial not in state_set:
        problems.append(Dangling(f"initial state {lts.initial} not declared"))
    for i, e in enumerate(lts.edges):
        if e.source not in state_set:
            problems.append(Dangling(f"edge {i} source {e.source} not declared"))
        if e.target not in state_set:
            problems.append(Dangling(f"edge {i} target {e.target} not declared"))
        if e.label not in label_set:
            problems.append(Dangling(f"edge {i} label {e.label} not declared"))
    seen_pairs: set[tuple[str, str]] = set()
    for e in lts.edges:
        key = (e.source, e.label)
        if key in seen_pairs:
            problems.append(Nondeterministic(e.source, e.label))
        seen_pairs.add(key)
    if lts.initial in state_set:
        reached = {lts.initial}
        frontier = deque([lts.initial])
        out: dict[str, list[str]] = {}
        for e in lts.edges:
            if e.source in state_set and e.target in state_set:
                out.setdefault(e.source, []).append(e.target)
        while frontier:
            s = frontier.popleft()
            for t in out.get(s, ()):
                if t not in reached:
                    reached.add(t)
                    frontier.append(t)
        for s in lts.states:
            if s not in reached:
                problems.append(Unreachable(s))
    return problems


# --- spanning tree and Parikh vectors -----------------------------------


@dataclass(frozen=True)
class SpanningTree:
    """BFS spanning tree of an LTS plus the tree-walk Parikh vector of every
    state (entry i counts label i on the unique tree path from the initial
    state)."""

    lts: Lts
    parent_edge: dict[str, int]
    parikh: dict[str, tuple[int, ...]]

    def tree_edges(self) -> frozenset[int]:
        return frozenset(self.parent_edge.values())


def spanning_tree(lts: Lts) -> SpanningTree:
    """Deterministic BFS tree: states are discovered in canonical edge order,
    so repeated calls give the same tree."""
    idx = lts.label_index()
    out: dict[str, list[int]] = {s: [] for s in lts.states}
    for i, e in enumerate(lts.edges):
        out[e.source].append(i)
    zero = tuple(0 for _ in lts.labels)
    parent: dict[str, int] = {}
    parikh: dict[str, tuple[int, ...]] = {lts.initial: zero}
    frontier = deque([lts.initial])
    while frontier:
        s = frontier.popleft()
        base = parikh[s]
        for i in out[s]:
            e = lts.edges[i]
            if e.target in parikh:
                continue
            v = list(base)
            v[idx[e.label]] += 1
            parent[e.target] = i
            parikh[e.target] = tuple(v)
            frontier.append(e.target)
    if len(parikh) != len(lts.states):
        missing = [s for s in lts.states if s not in parikh]
        raise ValueError(f"state not reachable from {lts.initial}: {missing[0]}")
    return SpanningTree(lts, parent, parikh)


def state_parikh(tree: SpanningTree, state: str) -> tuple[int, ...]:
    """Label counts along the tree path from the initial state to `state`."""
    try:
        return tree.parikh[state]
    except KeyError:
        raise ValueError(f"unknown state: {state}") from None


def edge_parikh(tree: SpanningTree, edge_index: int) -> tuple[int, ...]:
    """Parikh vector of an edge s -t-> s' relative to the tree:
    parikh(s) + unit(t) - parikh(s'). Zero exactly on tree edges."""
    lts = tree.lts
    if not 0 <= edge_index < len(lts.edges):
        raise ValueError(f"unknown edge index: {edge_index}")
    e = lts.edges[edge_index]
    idx = lts.label_index()
    v = list(tree.parikh[e.source])
    v[idx[e.label]] += 1
    tgt = tree.parikh[e.target]
    return tuple(a - b for a, b in zip(v, tgt))


@dataclass(frozen=True)
class CycleBase:
    """Row-reduced basis of the chord Parikh vectors; rows span the cycle
    space of the underlying graph (independent of the tree used)."""

    labels: tuple[str, ...]
    matrix: RatMatrix


def cycle_base(lts: Lts, tree: SpanningTree | None = None) -> CycleBase:
    if tree is None:
        tree = spanning_tree(lts)
    chords = [
        edge_parikh(tree, i)
        for i in range(len(lts.edges))
        if i not in tree.tree_edges()
    ]
    raw = RatMatrix.from_rows(chords, cols=len(lts.labels))
    ech = rref(raw)
    kept = [list(ech.reduced.row(r).entries) for r in range(ech.rank)]
    return CycleBase(lts.labels, RatMatrix.from_rows(kept, cols=len(lts.labels)))


# --- text format --------------------------------------------------------


class FormatError(ValueError):
    """Malformed text input; `line` is 1-based."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def parse_lts(text: str) -> Lts:
    """Parse the LTS text format:

        lts
        initial <state>
        edge <source> <label> <target>
        ...

    `#` starts a comment; blank lines are ignored. Raises FormatError with a
    line number on malformed input. The parsed system is not validated here;
    run `validate` for the structural contract.
    """
    lines = _content_lines(text)
    if not lines:
        raise FormatError(1, "empty input, expected 'lts' header")
    n, parts = lines[0]
    if parts != ["lts"]:
        raise FormatError(n, "expected 'lts' header")
    if len(lines) < 2:
        raise FormatError(n, "missing 'initial' line")
    n, parts = lines[1]
    if len(parts) != 2 or parts[0] != "initial":
        raise FormatError(n, "expected 'initial <state>'")
    initial = parts[1]
    edges: list[tuple[str, str, str]] = []
    for n, parts in lines[2:]:
        if parts[0] != "edge" or len(parts) != 4:
            raise FormatError(n, "expected 'edge <source> <label> <target>'")
        edges.append((parts[1], parts[2], parts[3]))
    return Lts.from_edges(initial, edges)


def format_lts(lts: Lts) -> str:
    """Canonical text form. Two representation limits: labels no edge uses
    are dropped on a round trip, and tokens containing `#` (e.g. labels of a
    split LTS) collide with the comment syntax and cannot round-trip."""
    out = ["lts", f"initial {lts.initial}"]
    for e in lts.edges:
        out.append(f"edge {e.source} {e.label} {e.target}")
    return "\n".join(out) + "\n"


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    """(line number, tokens) for each non-blank, non-comment line."""
    result = []
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            result.append((i, body.split()))
    return result
