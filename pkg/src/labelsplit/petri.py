"""Place/transition Petri nets: token game, reachability graphs, synthesis.

Weighted arcs, integer markings. Markings are tuples aligned with the
declared place order. The reachability graph is itself an `Lts` whose states
are canonical marking names, which lets the region machinery and the token
game meet in `verify_embedding`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .lts import Edge, FormatError, Lts, _content_lines, spanning_tree
from .regions import NotEmbeddable, separating_regions

Marking = tuple[int, ...]


@dataclass(frozen=True)
class PetriNet:
    """Arc weights are stored sparsely, keyed (place, transition); `consume`
    holds place->transition weights, `produce` transition->place weights."""

    places: tuple[str, ...]
    transitions: tuple[str, ...]
    consume: dict[tuple[str, str], int]
    produce: dict[tuple[str, str], int]
    initial_marking: Marking

    def __post_init__(self) -> None:
        if len(self.initial_marking) != len(self.places):
            raise ValueError("initial marking length does not match place count")

    def weight_in(self, place: str, transition: str) -> int:
        return self.consume.get((place, transition), 0)

    def weight_out(self, transition: str, place: str) -> int:
        return self.produce.get((place, transition), 0)


class NotEnabled(ValueError):
    def __init__(self, transition: str, place: str) -> None:
        super().__init__(f"transition {transition} not enabled: place {place} short of tokens")
        self.transition = transition
        self.place = place


def _check_transition(net: PetriNet, transition: str) -> None:
    if transition not in net.transitions:
        raise ValueError(f"unknown transition: {transition}")


def enabled(net: PetriNet, marking: Marking, transition: str) -> bool:
    """True when every place holds at least the transition's consume weight.
    Transitions with no input arcs are always enabled."""
    _check_transition(net, transition)
    return all(
        marking[i] >= net.weight_in(p, transition) for i, p in enumerate(net.places)
    )


def fire(net: PetriNet, marking: Marking, transition: str) -> Marking:
    """Successor marking; raises NotEnabled (naming a short place) otherwise."""
    _check_transition(net, transition)
    for i, p in enumerate(net.places):
        if marking[i] < net.weight_in(p, transition):
            raise NotEnabled(transition, p)
    return tuple(
        marking[i] - net.weight_in(p, transition) + net.weight_out(transition, p)
        for i, p in enumerate(net.places)
    )


def marking_name(net: PetriNet, marking: Marking) -> str:
    """Canonical state name for a marking: "p1:5,p2:1,..." in declared place
    order. A net with no places gets the single name "-" (the empty join is
    not a usable token in the LTS text format)."""
    if not net.places:
        return "-"
    return ",".join(f"{p}:{marking[i]}" for i, p in enumerate(net.places))


@dataclass(frozen=True)
class BoundExceeded:
    """Reachability graph construction hit the state cap."""

    max_states: int


def reachability_graph(net: PetriNet, max_states: int = 10000) -> Lts | BoundExceeded:
    """BFS over the token game from the initial marking.

    Returns the full reachability graph as an Lts (labels are ALL transitions,
    enabled anywhere or not) when it has at most `max_states` states, else a
    BoundExceeded marker.
    """
    start = net.initial_marking
    names: dict[Marking, str] = {start: marking_name(net, start)}
    order: list[Marking] = [start]
    edges: list[Edge] = []
    frontier = deque([start])
    while frontier:
        m = frontier.popleft()
        for t in net.transitions:
            if not enabled(net, m, t):
                continue
            succ = fire(net, m, t)
            if succ not in names:
                if len(names) == max_states:
                    return BoundExceeded(max_states)
                names[succ] = marking_name(net, succ)
                order.append(succ)
                frontier.append(succ)
            edges.append(Edge(names[m], t, names[succ]))
    return Lts(
        states=tuple(names[m] for m in order),
        labels=net.transitions,
        edges=tuple(edges),
        initial=names[start],
    )


# --- synthesis and verification -----------------------------------------


def synthesize(lts: Lts) -> PetriNet:
    """A net whose reachability graph the LTS embeds into, one place per
    separating region (places p1, p2, ... in basis order). Raises
    NotEmbeddable with a witness pair when no such net exists. An LTS with a
    single separable state class (e.g. one state) yields a net with no
    places whose transitions are the labels."""
    regions = separating_regions(lts)
    places = tuple(f"p{i + 1}" for i in range(len(regions)))
    consume: dict[tuple[str, str], int] = {}
    produce: dict[tuple[str, str], int] = {}
    for p, reg in zip(places, regions):
        for t in lts.labels:
            if reg.consume[t]:
                consume[(p, t)] = reg.consume[t]
            if reg.produce[t]:
                produce[(p, t)] = reg.produce[t]
    initial = tuple(reg.state_value[lts.initial] for reg in regions)
    return PetriNet(places, tuple(lts.labels), consume, produce, initial)


@dataclass(frozen=True)
class Verification:
    embeds: bool
    marking_map: dict[str, Marking] | None
    reason: str | None


def verify_embedding(lts: Lts, net: PetriNet) -> Verification:
    """Check that the canonical marking map embeds the LTS into the net's
    reachability graph.

    The map sends a state to the initial marking shifted by the net effect of
    the state's tree walk. Checked in order: all markings nonnegative, the
    map is injective, and every LTS edge is enabled at its source marking and
    fires to its target marking. Every LTS label must be a transition of the
    net (ValueError otherwise)."""
    missing = [t for t in lts.labels if t not in net.transitions]
    if missing:
        raise ValueError(f"label is not a transition of the net: {missing[0]}")
    tree = spanning_tree(lts)
    label_list = list(lts.labels)
    delta = {
        t: tuple(
            net.weight_out(t, p) - net.weight_in(p, t) for p in net.places
        )
        for t in label_list
    }
    mapping: dict[str, Marking] = {}
    for s in lts.states:
        p = tree.parikh[s]
        m = list(net.initial_marking)
        for i, t in enumerate(label_list):
            if p[i]:
                d = delta[t]
                for j in range(len(m)):
                    m[j] += p[i] * d[j]
        mapping[s] = tuple(m)
    for s in lts.states:
        if any(v < 0 for v in mapping[s]):
            return Verification(False, mapping, f"negative-marking {s}")
    seen: dict[Marking, str] = {}
    for s in lts.states:
        m = mapping[s]
        if m in seen:
            return Verification(False, mapping, f"not-injective {seen[m]} {s}")
        seen[m] = s
    for e in lts.edges:
        m = mapping[e.source]
        for i, p in enumerate(net.places):
            if m[i] < net.weight_in(p, e.label):
                return Verification(
                    False, mapping, f"not-enabled {e.source} {e.label} {p}"
                )
        if fire(net, m, e.label) != mapping[e.target]:
            return Verification(
                False, mapping, f"edge-mismatch {e.source} {e.label} {e.target}"
            )
    return Verification(True, mapping, None)


# --- text format --------------------------------------------------------


def parse_net(text: str) -> PetriNet:
    """Parse the net text format:

        net
        place <id> <tokens>
        trans <id>
        arc <x> <y> <weight>

    Place and transition ids must be disjoint; an arc's direction is inferred
    from which end is the place. `#` comments and blank lines are ignored.
    """
    lines = _content_lines(text)
    if not lines:
        raise FormatError(1, "empty input, expected 'net' header")
    n, parts = lines[0]
    if parts != ["net"]:
        raise FormatError(n, "expected 'net' header")
    places: list[str] = []
    tokens: dict[str, int] = {}
    transitions: list[str] = []
    consume: dict[tuple[str, str], int] = {}
    produce: dict[tuple[str, str], int] = {}
    for n, parts in lines[1:]:
        kind = parts[0]
        if kind == "place":
            if len(parts) != 3:
                raise FormatError(n, "expected 'place <id> <tokens>'")
            pid, raw = parts[1], parts[2]
            if pid in tokens or pid in transitions:
                raise FormatError(n, f"duplicate id: {pid}")
            count = _nonneg_int(raw, n, "token count")
            places.append(pid)
            tokens[pid] = count
        elif kind == "trans":
            if len(parts) != 2:
                raise FormatError(n, "expected 'trans <id>'")
            tid = parts[1]
            if tid in tokens or tid in transitions:
                raise FormatError(n, f"duplicate id: {tid}")
            transitions.append(tid)
        elif kind == "arc":
            if len(parts) != 4:
                raise FormatError(n, "expected 'arc <x> <y> <weight>'")
            a, b, raw = parts[1], parts[2], parts[3]
            w = _nonneg_int(raw, n, "arc weight")
            if w == 0:
                raise FormatError(n, "arc weight must be positive")
            if a in tokens and b in transitions:
                key, store = (a, b), consume
            elif a in transitions and b in tokens:
                key, store = (b, a), produce
            else:
                raise FormatError(
                    n, f"arc must join one declared place and one declared transition: {a} {b}"
                )
            if key in store:
                raise FormatError(n, f"duplicate arc: {a} {b}")
            store[key] = w
        else:
            raise FormatError(n, f"unknown directive: {kind}")
    return PetriNet(
        tuple(places),
        tuple(transitions),
        consume,
        produce,
        tuple(tokens[p] for p in places),
    )


def _nonneg_int(raw: str, line: int, what: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise FormatError(line, f"{what} must be an integer, got {raw!r}") from None
    if value < 0:
        raise FormatError(line, f"{what} must be nonnegative, got {value}")
    return value


def format_net(net: PetriNet) -> str:
    """Canonical text form: places, transitions, then input arcs and output
    arcs each in (place, transition) declared order."""
    out = ["net"]
    for i, p in enumerate(net.places):
        out.append(f"place {p} {net.initial_marking[i]}")
    for t in net.transitions:
        out.append(f"trans {t}")
    t_idx = {t: i for i, t in enumerate(net.transitions)}
    p_idx = {p: i for i, p in enumerate(net.places)}
    for (p, t), w in sorted(net.consume.items(), key=lambda kv: (p_idx[kv[0][0]], t_idx[kv[0][1]])):
        out.append(f"arc {p} {t} {w}")
    for (p, t), w in sorted(net.produce.items(), key=lambda kv: (p_idx[kv[0][0]], t_idx[kv[0][1]])):
        out.append(f"arc {t} {p} {w}")
    return "\n".join(out) + "\n"
