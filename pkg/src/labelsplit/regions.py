"""Regions: the bridge between an LTS and Petri net markings.

A region assigns every state a token count and every label a consume/produce
pair so that each edge s -t-> s' satisfies value(s) >= consume(t) and
value(s') = value(s) - consume(t) + produce(t). Each region is exactly one
place of a net whose reachability graph the LTS maps into; the marking of a
state under that place is the region's value.

Whether an injective such map into SOME net exists is a pure linear-algebra
question: take the cycle base of the LTS, its rational nullspace (the space
of feasible label effects), and ask whether effect vectors can tell every
pair of states apart. `is_embeddable`, `ssp_solvable` and span membership of
Parikh differences are three faces of the same criterion and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, RatVector, nullspace_basis
from .lts import CycleBase, Lts, SpanningTree, cycle_base, spanning_tree, state_parikh

EffectVector = tuple[int, ...]


@dataclass(frozen=True)
class Region:
    """One place worth of token bookkeeping over an LTS."""

    state_value: dict[str, int]
    consume: dict[str, int]
    produce: dict[str, int]

    def effect(self, label: str) -> int:
        return self.produce[label] - self.consume[label]

    def separates(self, s: str, t: str) -> bool:
        return self.state_value[s] != self.state_value[t]

    def violations(self, lts: Lts) -> list[str]:
        """Why this is not a valid region of `lts`; empty list means valid."""
        problems: list[str] = []
        for s in lts.states:
            if s not in self.state_value:
                problems.append(f"no value for state {s}")
            elif self.state_value[s] < 0:
                problems.append(f"negative value at state {s}")
        for t in lts.labels:
            if self.consume.get(t, 0) < 0 or self.produce.get(t, 0) < 0:
                problems.append(f"negative consume/produce at label {t}")
            if t not in self.consume or t not in self.produce:
                problems.append(f"no consume/produce for label {t}")
        if problems:
            return problems
        for e in lts.edges:
            have = self.state_value[e.source]
            need = self.consume[e.label]
            if have < need:
                problems.append(
                    f"edge {e.source} -{e.label}-> {e.target}: value {have} below consume {need}"
                )
                continue
            after = have - need + self.produce[e.label]
            if after != self.state_value[e.target]:
                problems.append(
                    f"edge {e.source} -{e.label}-> {e.target}: "
                    f"expected value {after}, declared {self.state_value[e.target]}"
                )
        return problems


@dataclass(frozen=True)
class EmbeddabilityReport:
    embeddable: bool
    signatures: dict[str, tuple[int, ...]]
    witness: tuple[str, str] | None


class NotEmbeddable(ValueError):
    """Raised by operations that require an embeddable LTS."""

    def __init__(self, witness: tuple[str, str]) -> None:
        super().__init__(f"no region separates states {witness[0]} and {witness[1]}")
        self.witness = witness


class CycleInconsistent(ValueError):
    """Effect vector does not vanish on the cycle space."""


def effect_space(lts: Lts, base: CycleBase | None = None) -> list[EffectVector]:
    """Integer basis of the feasible label-effect space.

    Feasible means orthogonal to every cycle of the LTS (walking a cycle must
    return a place to its starting token count). Basis vectors are the
    rational nullspace of the cycle base with denominators cleared. The list
    is empty exactly when the cycle base has full rank |labels|.
    """
    if base is None:
        base = cycle_base(lts)
    return [v.scaled_to_integers() for v in nullspace_basis(base.matrix)]


def _dot(vec: Sequence[int | Fraction], parikh: Sequence[int]):
    return sum(a * b for a, b in zip(vec, parikh))


def state_signature(
    lts: Lts, basis: Sequence[Sequence[int | Fraction]], state: str
) -> tuple:
    """Dot products of the state's tree Parikh vector with each basis vector.

    Two states get the same signature for a basis of the effect space exactly
    when no region can tell them apart.
    """
    tree = spanning_tree(lts)
    p = state_parikh(tree, state)
    for b in basis:
        if len(b) != len(lts.labels):
            raise ValueError("basis vector length does not match label count")
    return tuple(_dot(b, p) for b in basis)


def ssp_solvable(lts: Lts, s: str, t: str) -> EffectVector | None:
    """A feasible effect vector distinguishing states s and t, or None.

    None happens exactly when the difference of the two tree Parikh vectors
    lies in the row span of the cycle base; then every region values s and t
    equally and the pair is inseparable.
    """
    if s == t:
        raise ValueError(f"state separation needs two distinct states, got {s} twice")
    tree = spanning_tree(lts)
    ps = state_parikh(tree, s)
    pt = state_parikh(tree, t)
    diff = tuple(a - b for a, b in zip(ps, pt))
    for e in effect_space(lts, cycle_base(lts, tree)):
        if _dot(e, diff) != 0:
            return e
    return None


def is_embeddable(lts: Lts) -> EmbeddabilityReport:
    """Does the LTS embed injectively into some Petri net reachability graph?

    Computes every state's signature against one fixed effect-space basis;
    embeddable iff the signatures are pairwise distinct. The witness on
    failure is the first colliding pair in canonical state order.
    """
    tree = spanning_tree(lts)
    basis = effect_space(lts, cycle_base(lts, tree))
    signatures: dict[str, tuple[int, ...]] = {}
    first_owner: dict[tuple[int, ...], str] = {}
    witness: tuple[str, str] | None = None
    for s in lts.states:
        p = tree.parikh[s]
        sig = tuple(_dot(b, p) for b in basis)
        signatures[s] = sig
        if witness is None:
            if sig in first_owner:
                witness = (first_owner[sig], s)
            else:
                first_owner[sig] = s
    return EmbeddabilityReport(witness is None, signatures, witness)


def region_from_effect(lts: Lts, effect: Sequence[int]) -> Region:
    """The canonical region realizing a feasible effect vector.

    The value of a state is a common offset plus the effect of its tree walk;
    the offset is the smallest one keeping all values nonnegative. Consume is
    the negative part of the label effect, produce the positive remainder
    (so consume(t) is minimal for the given effect).
    """
    effect = tuple(effect)
    if len(effect) != len(lts.labels):
        raise ValueError("effect vector length does not match label count")
    tree = spanning_tree(lts)
    base = cycle_base(lts, tree)
    evec = RatVector.make(effect)
    for r in range(base.matrix.rows):
        if base.matrix.row(r).dot(evec) != 0:
            raise CycleInconsistent(
                "effect vector has nonzero work around a cycle of the LTS"
            )
    walk = {s: _dot(effect, tree.parikh[s]) for s in lts.states}
    offset = max(0, max(-w for w in walk.values()))
    values = {s: offset + w for s, w in walk.items()}
    consume = {t: max(0, -effect[i]) for i, t in enumerate(lts.labels)}
    produce = {t: effect[i] + consume[t] for i, t in enumerate(lts.labels)}
    return Region(values, consume, produce)


def separating_regions(lts: Lts) -> list[Region]:
    """One region per effect-space basis vector; together they distinguish
    every pair of states. Raises NotEmbeddable (with a witness pair) when no
    region set can."""
    report = is_embeddable(lts)
    if not report.embeddable:
        assert report.witness is not None
        raise NotEmbeddable(report.witness)
    return [region_from_effect(lts, e) for e in effect_space(lts)]
