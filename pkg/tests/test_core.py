import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIG6_BITS, ROW2_BITS
from rfqmst.core import (
    EvalContext,
    aggregate,
    bits_to_str,
    dominates,
    evaluate,
    evaluate_many,
    is_spanning_tree,
    parse_bits,
    random_tree,
    repair,
    tree_violation,
)
from rfqmst.instance import EdgeSpec, Instance, generate_random, paper_instance
from rfqmst.uncertainty import RoughFuzzyWeight, TriangularFuzzy

PAPER = paper_instance()
FIG6_EDGES = ["e12", "e17", "e26", "e34", "e45", "e49", "e58", "e79"]


def _bits_for(inst, labels):
    bits = np.zeros(inst.edge_count, dtype=bool)
    for lab in labels:
        bits[inst.edge_index(lab)] = True
    return bits


def test_reference_tree_labels_match_bits(paper, fig6):
    assert np.array_equal(_bits_for(paper, FIG6_EDGES), fig6)


def test_reference_tree_is_tree(paper, fig6):
    assert is_spanning_tree(paper, fig6)
    assert not is_spanning_tree(paper, np.zeros(18, bool))


def test_cycle_detected(paper):
    # triangle 1-2-6 plus five more edges
    bits = _bits_for(paper, ["e12", "e16", "e26", "e34", "e45", "e17", "e39", "e58"])
    assert "closes a cycle" in tree_violation(paper, bits)


def test_violation_counts_edges(paper):
    assert "selects 0 edges" in tree_violation(paper, np.zeros(18, bool))


def test_reference_tree_linear_aggregate_by_hand(paper, fig6):
    # independent hand-sum over the raw table rows
    u = v = w = q1 = 0.0
    for lab in FIG6_EDGES:
        wt = paper.edges[paper.edge_index(lab)].weight
        u, v, w = u + wt.base.u + wt.a3, v + wt.base.v + wt.a3, w + wt.base.w + wt.a3
        q1 += wt.a4 - wt.a3
    agg = aggregate(paper, fig6, "linear")
    assert agg.p.as_tuple() == pytest.approx((u, v, w))
    assert agg.p.as_tuple() == pytest.approx((74.6, 87.6, 100.8))
    assert agg.q1 == pytest.approx(24.2)


def test_reference_tree_quadratic_aggregate(paper, fig6):
    ids = np.flatnonzero(fig6)
    present = [(i, j) for i, j in itertools.combinations(ids, 2) if paper.quad_weight(i, j)]
    assert [(paper.edges[i].label, paper.edges[j].label) for i, j in present] == [("e12", "e26")]
    agg = aggregate(paper, fig6, "quadratic")
    assert agg.p.as_tuple() == pytest.approx((8.4, 9.0, 9.6))
    assert agg.q1 == pytest.approx(1.7)


def test_row2_tree_has_one_pair(paper):
    bits = parse_bits(ROW2_BITS)
    assert is_spanning_tree(paper, bits)
    ids = np.flatnonzero(bits)
    present = [(paper.edges[i].label, paper.edges[j].label)
               for i, j in itertools.combinations(ids, 2) if paper.quad_weight(i, j)]
    assert present == [("e27", "e39")]


def test_evaluate_reference_tree(ctx04, fig6):
    f1, f2 = evaluate(ctx04, fig6)
    assert f1 == pytest.approx(128.56, abs=1e-6)
    assert f2 == pytest.approx(11.94, abs=1e-6)


def test_evaluate_row2_quadratic(ctx08):
    assert evaluate(ctx08, parse_bits(ROW2_BITS)).f2 == pytest.approx(16.44, abs=1e-6)


def test_evaluate_zero_levels(paper, fig6):
    ctx = EvalContext.from_levels(paper, 0.0, 0.0)
    assert evaluate(ctx, fig6).f1 == pytest.approx(74.6)


def test_tree_without_pairs_has_zero_f2():
    w = RoughFuzzyWeight(TriangularFuzzy(1, 2, 3), 0, 1, -1, 2)
    inst = Instance(3, [EdgeSpec(0, 1, 2, w), EdgeSpec(1, 2, 3, w), EdgeSpec(2, 1, 3, w)])
    ctx = EvalContext.from_levels(inst, 0.7, 0.7)
    assert evaluate(ctx, np.array([1, 1, 0], bool)).f2 == 0.0
    agg = aggregate(inst, np.array([1, 1, 0], bool), "quadratic")
    assert agg.p.as_tuple() == (0, 0, 0) and agg.q1 == 0


def test_dominates():
    assert dominates((1, 2), (2, 2))
    assert not dominates((1, 2), (2, 1))
    assert not dominates((1, 2), (1, 2))


def test_bits_round_trip():
    assert bits_to_str(parse_bits(FIG6_BITS)) == FIG6_BITS
    with pytest.raises(ValueError):
        parse_bits("0120")


def test_repair_idempotent_on_trees(paper, fig6):
    rng = np.random.default_rng(0)
    state = rng.bit_generator.state
    assert np.array_equal(repair(paper, fig6, rng), fig6)
    assert rng.bit_generator.state == state


@pytest.mark.parametrize("fill", [0, 1])
def test_repair_extremes(paper, fill):
    bits = np.full(18, bool(fill))
    assert is_spanning_tree(paper, repair(paper, bits, np.random.default_rng(3)))


def test_random_tree(paper):
    t = random_tree(paper, np.random.default_rng(9))
    assert t.sum() == 8 and is_spanning_tree(paper, t)
    assert np.array_equal(t, random_tree(paper, np.random.default_rng(9)))
    single = generate_random(2, 1, seed=0)
    assert random_tree(single, np.random.default_rng(1)).tolist() == [True]


@given(st.lists(st.booleans(), min_size=18, max_size=18), st.integers(0, 2**32 - 1))
def test_repair_always_valid(bits, seed):
    paper = PAPER
    bits = np.array(bits, bool)
    out = repair(paper, bits, np.random.default_rng(seed))
    assert is_spanning_tree(paper, out)
    if is_spanning_tree(paper, bits):
        assert np.array_equal(out, bits)


@given(st.integers(0, 2**32 - 1))
def test_repair_keeps_acyclic_input(seed):
    paper = PAPER
    rng = np.random.default_rng(seed)
    tree = random_tree(paper, rng)
    forest = tree & (rng.random(18) < 0.6)
    out = repair(paper, forest, rng)
    assert np.all(out[forest])


def test_batch_matches_scalar(ctx04, ctx08, paper):
    rng = np.random.default_rng(5)
    trees = np.array([random_tree(paper, rng) for _ in range(200)])
    for ctx in (ctx04, ctx08):
        batch = evaluate_many(ctx, trees)
        scalar = np.array([evaluate(ctx, t) for t in trees])
        assert np.allclose(batch, scalar, atol=1e-9, rtol=0)


def test_batch_is_row_independent(ctx04, paper):
    rng = np.random.default_rng(6)
    trees = np.array([random_tree(paper, rng) for _ in range(50)])
    whole = evaluate_many(ctx04, trees)
    for k in (0, 17, 49):
        assert np.array_equal(evaluate_many(ctx04, trees[k:k + 1])[0], whole[k])


def test_f2_nonnegative_on_random_instances():
    inst = generate_random(7, 12, seed=2)
    ctx = EvalContext.from_levels(inst, 0.3, 0.6)
    rng = np.random.default_rng(0)
    trees = np.array([random_tree(inst, rng) for _ in range(100)])
    assert (evaluate_many(ctx, trees)[:, 1] >= 0).all()
