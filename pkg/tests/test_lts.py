import random

import pytest

from helpers import load_lts, random_lts
from labelsplit.linalg import RatMatrix, RatVector, in_span
from labelsplit.lts import (
    Dangling,
    FormatError,
    Lts,
    Nondeterministic,
    Unreachable,
    cycle_base,
    edge_parikh,
    format_lts,
    parse_lts,
    spanning_tree,
    state_parikh,
    validate,
)


def test_parse_canonical_order():
    lts = load_lts("fig1-right.lts")
    assert lts.initial == "s0"
    assert lts.states == ("s0", "s1", "s2", "s3", "s4", "s5", "s6")
    assert lts.labels == ("a", "b")
    assert len(lts.edges) == 6


def test_parse_comments_and_blanks():
    lts = parse_lts("# heading\n\nlts\ninitial x # trailing\n\nedge x go y\n")
    assert lts.initial == "x"
    assert lts.edges[0] == ("x", "go", "y")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError) as err:
        parse_lts("nets\ninitial s0\n")
    assert err.value.line == 1
    with pytest.raises(FormatError) as err:
        parse_lts("lts\ninitial\n")
    assert err.value.line == 2
    with pytest.raises(FormatError) as err:
        parse_lts("lts\ninitial s0\nedge s0 a\n")
    assert err.value.line == 3
    with pytest.raises(FormatError):
        parse_lts("")


def test_format_round_trip():
    for name in ("fig1-right.lts", "fig1-left.lts", "fig2-left.lts", "fig2-middle.lts"):
        lts = load_lts(name)
        assert parse_lts(format_lts(lts)) == lts


def test_validate_clean_fixtures():
    for name in ("fig1-right.lts", "fig2-left.lts", "fig2-middle.lts"):
        assert validate(load_lts(name)) == []


def test_validate_single_state():
    assert validate(Lts(("s0",), (), (), "s0")) == []


def test_validate_nondeterminism():
    lts = Lts.from_edges("s0", [("s0", "a", "s1"), ("s0", "a", "s2")])
    problems = validate(lts)
    assert any(isinstance(p, Nondeterministic) and p.source == "s0" for p in problems)


def test_validate_unreachable():
    lts = Lts(("s0", "s1"), ("a",), (), "s0")
    problems = validate(lts)
    assert problems == [Unreachable("s1")]


def test_validate_dangling():
    from labelsplit.lts import Edge

    lts = Lts(("s0",), ("a",), (Edge("s0", "a", "ghost"),), "s0")
    problems = validate(lts)
    assert any(isinstance(p, Dangling) for p in problems)


def test_spanning_tree_tree_lts_uses_all_edges():
    lts = load_lts("fig1-left.lts")
    tree = spanning_tree(lts)
    assert tree.tree_edges() == frozenset(range(6))


def test_spanning_tree_fig2_middle_picks_first_use_edges():
    lts = load_lts("fig2-middle.lts")
    tree = spanning_tree(lts)
    # chords are the three c-edges and the duplicate route to s3
    assert tree.tree_edges() == frozenset({0, 1, 2, 3, 4, 5, 9})
    assert spanning_tree(lts).tree_edges() == tree.tree_edges()  # deterministic


def test_spanning_tree_rejects_unreachable():
    lts = Lts(("s0", "s1"), ("a",), (), "s0")
    with pytest.raises(ValueError):
        spanning_tree(lts)


def test_state_parikh_fig2_middle():
    lts = load_lts("fig2-middle.lts")
    tree = spanning_tree(lts)
    assert lts.labels == ("a", "b", "c")
    assert state_parikh(tree, "s0") == (0, 0, 0)
    assert state_parikh(tree, "s3") == (1, 1, 0)
    assert state_parikh(tree, "s7") == (1, 3, 0)
    assert state_parikh(tree, "s5") == (1, 2, 0)
    with pytest.raises(ValueError):
        state_parikh(tree, "nope")


def test_edge_parikh_zero_on_tree_edges():
    lts = load_lts("fig2-middle.lts")
    tree = spanning_tree(lts)
    for i in sorted(tree.tree_edges()):
        assert edge_parikh(tree, i) == (0, 0, 0)


def test_edge_parikh_chords_fig2_middle():
    lts = load_lts("fig2-middle.lts")
    tree = spanning_tree(lts)
    chords = {i: edge_parikh(tree, i) for i in range(len(lts.edges)) if i not in tree.tree_edges()}
    # the parallel route s2 -a-> s3 closes no labels; each c-edge closes a+b+c
    assert chords[8] == (0, 0, 0)
    assert chords[6] == (1, 1, 1)
    assert chords[7] == (1, 1, 1)
    assert chords[10] == (1, 1, 1)
    with pytest.raises(ValueError):
        edge_parikh(tree, 99)


def test_cycle_base_fig2_middle():
    lts = load_lts("fig2-middle.lts")
    base = cycle_base(lts)
    assert base.labels == ("a", "b", "c")
    assert base.matrix.rows == 1
    assert list(base.matrix.row(0).entries) == [1, 1, 1]


def test_cycle_base_empty_for_trees():
    base = cycle_base(load_lts("fig1-right.lts"))
    assert base.matrix.rows == 0
    assert base.matrix.cols == 2


def test_cycle_base_fig2_left():
    base = cycle_base(load_lts("fig2-left.lts"))
    assert base.matrix.rows == 1
    assert list(base.matrix.row(0).entries) == [1, 1, 1]


def test_random_walk_parikh_consistency():
    # walking any edge takes parikh(source) + unit(label) - parikh(target)
    # to the edge's chord vector; on tree edges that is zero
    rng = random.Random(5)
    for _ in range(50):
        lts = random_lts(rng)
        tree = spanning_tree(lts)
        idx = lts.label_index()
        for i, e in enumerate(lts.edges):
            v = list(state_parikh(tree, e.source))
            v[idx[e.label]] += 1
            diff = tuple(a - b for a, b in zip(v, state_parikh(tree, e.target)))
            assert diff == edge_parikh(tree, i)
            if i in tree.tree_edges():
                assert diff == tuple(0 for _ in lts.labels)


def test_random_chords_in_cycle_base_span():
    rng = random.Random(6)
    for _ in range(50):
        lts = random_lts(rng)
        tree = spanning_tree(lts)
        base = cycle_base(lts, tree)
        for i in range(len(lts.edges)):
            if i in tree.tree_edges():
                continue
            assert in_span(base.matrix, RatVector.make(edge_parikh(tree, i)))


def test_random_walk_difference_in_cycle_span():
    # for any walk from s to s': parikh(s) + parikh(word) - parikh(s') is a
    # combination of base cycles
    rng = random.Random(9)
    for _ in range(40):
        lts = random_lts(rng)
        tree = spanning_tree(lts)
        base = cycle_base(lts, tree)
        idx = lts.label_index()
        out = {}
        for e in lts.edges:
            out.setdefault(e.source, []).append(e)
        for _ in range(6):
            start = rng.choice(lts.states)
            here = start
            counts = [0] * len(lts.labels)
            for _ in range(rng.randint(0, 10)):
                if here not in out:
                    break
                e = rng.choice(out[here])
                counts[idx[e.label]] += 1
                here = e.target
            diff = tuple(
                a + w - b
                for a, w, b in zip(
                    state_parikh(tree, start), counts, state_parikh(tree, here)
                )
            )
            assert in_span(base.matrix, RatVector.make(diff))


def test_from_edges_explicit_labels_must_cover():
    with pytest.raises(ValueError):
        Lts.from_edges("s0", [("s0", "a", "s1")], labels=("b",))
