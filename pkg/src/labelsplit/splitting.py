"""Label splittings: relabelling edges to make an LTS embeddable.

A splitting refines the alphabet: every original label keeps its name, each
label's edge set may be partitioned into blocks, and every extra block gets a
fresh label that maps back to the original. Splitting never changes states
or the shape of the graph, only edge labels, and it preserves determinism.

Canonical form: per label, the block containing the lowest-numbered edge
keeps the original name; the remaining blocks are named `<label>#1`,
`<label>#2`, ... in order of their lowest edge index. Every splitting is
equivalent to exactly one canonical splitting, so searches enumerate only
those.

`decide` is a complete branch-and-bound over canonical splittings within a
label budget. Labels with a two-edge cycle (s -t-> s' and s' -t-> s) can
never keep both edges in one block: any region would need the block label's
effect x to satisfy 2x = 0, forcing equal values on s and s', so such pairs
are inseparable. That rule gives a sound per-label lower bound of two blocks
and a partition filter; both prunings preserve completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .lts import FormatError, Lts
from .regions import is_embeddable


@dataclass(frozen=True)
class LabelSplitting:
    """`alphabet` is the refined label set, `parent` maps each of its labels
    to the original it came from (identity on originals), and `edge_labels`
    gives the new label of every edge in canonical edge order."""

    alphabet: tuple[str, ...]
    parent: dict[str, str]
    edge_labels: tuple[str, ...]

    def labels_used(self) -> int:
        return len(self.alphabet)


def identity_splitting(lts: Lts) -> LabelSplitting:
    return LabelSplitting(
        tuple(lts.labels),
        {t: t for t in lts.labels},
        tuple(e.label for e in lts.edges),
    )


def from_partitions(
    lts: Lts, partitions: dict[str, Sequence[Sequence[int]]]
) -> LabelSplitting:
    """Canonical splitting from per-label partitions of edge indices.

    `partitions` maps a label to a partition of that label's edge indices
    (absolute indices into lts.edges); labels not in the dict stay unsplit.
    """
    per_label: dict[str, list[int]] = {t: [] for t in lts.labels}
    for i, e in enumerate(lts.edges):
        per_label[e.label].append(i)
    originals = set(lts.labels)
    parent: dict[str, str] = {t: t for t in lts.labels}
    edge_labels: list[str] = [e.label for e in lts.edges]
    fresh: list[tuple[int, str]] = []
    for t in lts.labels:
        blocks = [sorted(int(i) for i in blk) for blk in partitions.get(t, [])]
        if not blocks:
            blocks = [per_label[t]] if per_label[t] else []
        flat = sorted(i for blk in blocks for i in blk)
        if flat != per_label[t]:
            raise ValueError(f"partition for {t} does not cover its edge set exactly")
        blocks.sort(key=lambda blk: blk[0])
        counter = 0
        for blk in blocks[1:]:
            counter += 1
            name = f"{t}#{counter}"
            while name in originals:
                counter += 1
                name = f"{t}#{counter}"
            fresh.append((blk[0], name))
            parent[name] = t
            for i in blk:
                edge_labels[i] = name
    # alphabet: originals in canonical order, then fresh labels by the lowest
    # edge they relabel (= first-use order in the witness serialization)
    fresh.sort()
    alphabet = tuple(lts.labels) + tuple(name for _, name in fresh)
    return LabelSplitting(alphabet, parent, tuple(edge_labels))


def apply_splitting(lts: Lts, splitting: LabelSplitting) -> Lts:
    """Relabel the edges; states, initial state and graph shape are kept."""
    if len(splitting.edge_labels) != len(lts.edges):
        raise ValueError("splitting does not match the LTS edge count")
    edges = tuple(
        (e.source, splitting.edge_labels[i], e.target) for i, e in enumerate(lts.edges)
    )
    return Lts.from_edges(lts.initial, edges, labels=splitting.alphabet)


def validate_splitting(lts: Lts, splitting: LabelSplitting) -> list[str]:
    """Contract check; empty list means well formed (and the result stays
    deterministic)."""
    problems: list[str] = []
    if len(set(splitting.alphabet)) != len(splitting.alphabet):
        problems.append("alphabet has duplicate labels")
    originals = set(lts.labels)
    for t in lts.labels:
        if t not in splitting.alphabet:
            problems.append(f"original label {t} missing from alphabet")
        elif splitting.parent.get(t) != t:
            problems.append(f"parent map is not the identity on original label {t}")
    for t in splitting.alphabet:
        p = splitting.parent.get(t)
        if p is None:
            problems.append(f"no parent for label {t}")
        elif p not in originals:
            problems.append(f"parent of {t} is not an original label: {p}")
    if len(splitting.edge_labels) != len(lts.edges):
        problems.append("edge relabelling length differs from edge count")
        return problems
    for i, e in enumerate(lts.edges):
        new = splitting.edge_labels[i]
        if new not in splitting.parent:
            problems.append(f"edge {i} assigned unknown label {new}")
        elif splitting.parent[new] != e.label:
            problems.append(
                f"edge {i} relabelled {e.label} -> {new}, which maps back to {splitting.parent[new]}"
            )
    seen: set[tuple[str, str]] = set()
    for i, e in enumerate(lts.edges):
        key = (e.source, splitting.edge_labels[i])
        if key in seen:
            problems.append(f"result nondeterministic at {key[0]} with label {key[1]}")
        seen.add(key)
    return problems


# --- witness text form --------------------------------------------------


def serialize_splitting(lts: Lts, splitting: LabelSplitting) -> str:
    """Sparse text form: a `labels <count>` line, then one
    `split <edge-index> <new-label>` line per edge whose label changed."""
    out = [f"labels {splitting.labels_used()}"]
    for i, e in enumerate(lts.edges):
        new = splitting.edge_labels[i]
        if new != e.label:
            out.append(f"split {i} {new}")
    return "\n".join(out) + "\n"


def parse_splitting(lts: Lts, text: str) -> LabelSplitting:
    """Parse a witness against the LTS it splits. New labels are taken as
    written; each must be used on edges of a single original label and must
    not collide with a different original label.

    Unlike the LTS/net formats this one has no comment syntax: canonical
    fresh labels contain `#`, so `#` stays an ordinary character here."""
    lines = [
        (i, raw.split())
        for i, raw in enumerate(text.splitlines(), start=1)
        if raw.strip()
    ]
    if not lines:
        raise FormatError(1, "empty input, expected 'labels' header")
    n, parts = lines[0]
    if len(parts) != 2 or parts[0] != "labels":
        raise FormatError(n, "expected 'labels <count>'")
    try:
        declared = int(parts[1])
    except ValueError:
        raise FormatError(n, f"label count must be an integer, got {parts[1]!r}") from None
    edge_labels = [e.label for e in lts.edges]
    relabelled: set[int] = set()
    originals = set(lts.labels)
    parent: dict[str, str] = {t: t for t in lts.labels}
    fresh: list[str] = []
    for n, parts in lines[1:]:
        if len(parts) != 3 or parts[0] != "split":
            raise FormatError(n, "expected 'split <edge-index> <new-label>'")
        try:
            i = int(parts[1])
        except ValueError:
            raise FormatError(n, f"edge index must be an integer, got {parts[1]!r}") from None
        if not 0 <= i < len(lts.edges):
            raise FormatError(n, f"edge index out of range: {i}")
        if i in relabelled:
            raise FormatError(n, f"edge {i} relabelled twice")
        relabelled.add(i)
        new = parts[2]
        original = lts.edges[i].label
        if new in originals:
            if new != original:
                raise FormatError(
                    n, f"edge {i} relabelled to a different original label {new}"
                )
        elif new in parent:
            if parent[new] != original:
                raise FormatError(
                    n, f"label {new} used for edges of both {parent[new]} and {original}"
                )
        else:
            parent[new] = original
            fresh.append(new)
        edge_labels[i] = new
    alphabet = tuple(lts.labels) + tuple(fresh)
    if declared != len(alphabet):
        raise FormatError(
            lines[0][0], f"declared {declared} labels, witness uses {len(alphabet)}"
        )
    return LabelSplitting(alphabet, parent, tuple(edge_labels))


# --- search -------------------------------------------------------------


def set_partitions(count: int, max_blocks: int | None = None) -> Iterator[list[list[int]]]:
    """All set partitions of range(count), at most `max_blocks` blocks.

    Restricted-growth-string order, so the single-block partition comes
    first. Blocks are listed by their smallest element, elements ascending.
    """
    cap = count if max_blocks is None else min(max_blocks, count)
    if count == 0:
        yield []
        return
    if cap < 1:
        return
    assign = [0] * count

    def rec(i: int, used: int) -> Iterator[list[list[int]]]:
        if i == count:
            blocks: list[list[int]] = [[] for _ in range(used)]
            for j, b in enumerate(assign):
                blocks[b].append(j)
            yield blocks
            return
        for b in range(min(used + 1, cap)):
            assign[i] = b
            yield from rec(i + 1, max(used, b + 1))

    yield from rec(1, 1)


def conflict_pairs(lts: Lts) -> dict[str, list[tuple[int, int]]]:
    """Per label, the edge index pairs forming a two-state cycle under that
    label. Such a pair can never share a block in an embeddable splitting."""
    by_key: dict[tuple[str, str, str], int] = {
        (e.source, e.label, e.target): i for i, e in enumerate(lts.edges)
    }
    result: dict[str, list[tuple[int, int]]] = {t: [] for t in lts.labels}
    for i, e in enumerate(lts.edges):
        if e.source == e.target:
            continue
        j = by_key.get((e.target, e.label, e.source))
        if j is not None and i < j:
            result[e.label].append((i, j))
    return result


@dataclass(frozen=True)
class SplitOutcome:
    """`found` with a witness, definitive not-found, or `exhausted` when the
    node budget ran out before the search completed."""

    found: bool
    splitting: LabelSplitting | None
    labels_used: int | None
    exhausted: bool
    nodes: int


class SearchBudgetExhausted(RuntimeError):
    pass


class _OutOfNodes(Exception):
    pass


def decide(lts: Lts, max_labels: int, node_budget: int | None = None) -> SplitOutcome:
    """Is there a splitting with at most `max_labels` labels whose result is
    embeddable? Complete search over canonical splittings; the first witness
    found (identity first, then increasingly split) is returned verified.

    `node_budget` caps the number of search nodes (partition candidates and
    leaves); hitting it yields an `exhausted` outcome, which is weaker than a
    definitive not-found.
    """
    if max_labels < 1:
        raise ValueError(f"label budget must be at least 1, got {max_labels}")
    per_label = {t: [] for t in lts.labels}
    for i, e in enumerate(lts.edges):
        per_label[e.label].append(i)
    conflicts = conflict_pairs(lts)
    order = sorted(lts.labels, key=lambda t: -len(per_label[t]))
    extra_budget = max_labels - len(lts.labels)
    min_extra = [1 if conflicts[t] else 0 for t in order]
    suffix = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + min_extra[i]
    nodes = 0
    if extra_budget < 0 or suffix[0] > extra_budget:
        return SplitOutcome(False, None, None, False, 0)
    chosen: dict[str, list[list[int]]] = {}

    def bump() -> None:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise _OutOfNodes

    def rec(i: int, extra_used: int) -> LabelSplitting | None:
        if i == len(order):
            bump()
            candidate = from_partitions(lts, chosen)
            if is_embeddable(apply_splitting(lts, candidate)).embeddable:
                return candidate
            return None
        t = order[i]
        idxs = per_label[t]
        if not idxs:
            return rec(i + 1, extra_used)
        allowed = extra_budget - extra_used - suffix[i + 1]
        bad = conflicts[t]
        for blocks in set_partitions(len(idxs), max_blocks=1 + allowed):
            bump()
            block_of = {}
            for b, blk in enumerate(blocks):
                for k in blk:
                    block_of[idxs[k]] = b
            if any(block_of[a] == block_of[b] for a, b in bad):
                continue
            chosen[t] = [[idxs[k] for k in blk] for blk in blocks]
            result = rec(i + 1, extra_used + len(blocks) - 1)
            if result is not None:
                return result
        chosen.pop(t, None)
        return None

    try:
        witness = rec(0, 0)
    except _OutOfNodes:
        return SplitOutcome(False, None, None, True, nodes)
    if witness is None:
        return SplitOutcome(False, None, None, False, nodes)
    return SplitOutcome(True, witness, witness.labels_used(), False, nodes)


def optimize(lts: Lts, node_budget: int | None = None) -> tuple[int, LabelSplitting]:
    """Minimum label count over all splittings with an embeddable result,
    with a witness achieving it.

    Tries budgets |labels|, |labels|+1, ... upward; the fully split LTS (all
    edge labels distinct) is always embeddable, so the loop ends by
    |labels| + |edges|. Raises SearchBudgetExhausted if any round runs out
    of nodes before settling."""
    if not lts.labels:
        return (0, identity_splitting(lts))
    for q in range(len(lts.labels), len(lts.labels) + len(lts.edges) + 1):
        outcome = decide(lts, q, node_budget)
        if outcome.exhausted:
            raise SearchBudgetExhausted(f"node budget ran out at label budget {q}")
        if outcome.found:
            assert outcome.splitting is not None
            assert outcome.labels_used == q, "found earlier budget should have caught this"
            return (q, outcome.splitting)
    raise AssertionError("fully split LTS must be embeddable")
