"""Shared test utilities: fixture loading, seeded random LTS generation, and
an independent exhaustive splitting oracle."""

from __future__ import annotations

import random
from pathlib import Path

from labelsplit import Lts, apply_splitting, from_partitions, is_embeddable, parse_lts, parse_net

FIXTURES = Path(__file__).parent / "fixtures"


def load_lts(name: str) -> Lts:
    return parse_lts((FIXTURES / name).read_text())


def load_net(name: str):
    return parse_net((FIXTURES / name).read_text())


def random_lts(
    rng: random.Random,
    max_states: int = 8,
    max_labels: int = 4,
    min_states: int = 1,
    extra_edges: int = 4,
) -> Lts:
    """A random valid LTS: deterministic and reachable by construction.

    Builds a random spanning tree over the states first (guaranteeing
    reachability), then sprinkles extra edges wherever determinism allows.
    """
    n = rng.randint(min_states, max_states)
    k = rng.randint(1, max_labels)
    labels = [chr(ord("a") + i) for i in range(k)]
    states = [f"s{i}" for i in range(n)]
    used: set[tuple[str, str]] = set()
    edges: list[tuple[str, str, str]] = []
    for i in range(1, n):
        candidates = [
            (states[p], t) for p in range(i) for t in labels if (states[p], t) not in used
        ]
        if not candidates:
            break
        source, label = rng.choice(candidates)
        used.add((source, label))
        edges.append((source, label, states[i]))
    reached = {"s0"} | {t for _, _, t in edges}
    pool = sorted(reached)
    for _ in range(rng.randint(0, extra_edges)):
        candidates = [
            (s, t) for s in pool for t in labels if (s, t) not in used
        ]
        if not candidates:
            break
        source, label = rng.choice(candidates)
        used.add((source, label))
        edges.append((source, label, rng.choice(pool)))
    return Lts.from_edges("s0", edges)


def tiny_random_lts(rng: random.Random) -> Lts:
    """Small instances for the search-vs-brute sweep: at least one edge,
    at most 8 edges and 3 labels."""
    while True:
        lts = random_lts(rng, max_states=5, max_labels=3, min_states=2, extra_edges=3)
        if 1 <= len(lts.edges) <= 8:
            return lts


def all_partitions(items: list[int]):
    """Every set partition of `items`, written independently of the package's
    generator (simple recursive insertion)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in all_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield [[first]] + sub


def minimal_split_labels(lts: Lts) -> int:
    """Exhaustive oracle: the minimum label count over ALL canonical
    splittings with an embeddable result. No pruning rules, no search order
    tricks; plain product over per-label partitions."""
    per_label: dict[str, list[int]] = {t: [] for t in lts.labels}
    for i, e in enumerate(lts.edges):
        per_label[e.label].append(i)
    label_list = list(lts.labels)
    best = [None]

    def rec(pos: int, chosen: dict[str, list[list[int]]], count: int) -> None:
        if best[0] is not None and count >= best[0]:
            return
        if pos == len(label_list):
            candidate = from_partitions(lts, chosen)
            if is_embeddable(apply_splitting(lts, candidate)).embeddable:
                best[0] = count
            return
        t = label_list[pos]
        if not per_label[t]:
            rec(pos + 1, chosen, count)
            return
        for part in all_partitions(per_label[t]):
            chosen[t] = part
            rec(pos + 1, chosen, count + len(part) - 1)
        del chosen[t]

    rec(0, {}, len(label_list))
    assert best[0] is not None, "fully split LTS is always embeddable"
    return best[0]
