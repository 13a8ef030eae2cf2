import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rfqmst.metrics import (
    Front,
    build_reference_front,
    epsilon_additive,
    gd,
    hypervolume,
    igd,
    indicator_values,
    nondominated_mask,
    normalize,
    spread,
    summarize_runs,
)

pt = st.tuples(st.floats(0, 1, allow_nan=False), st.floats(0, 1, allow_nan=False))
point_lists = st.lists(pt, min_size=1, max_size=30)


def grid_hypervolume(points, ref=(1.0, 1.0)):
    """Area of the union of boxes [p, ref], by coordinate compression."""
    pts = [p for p in points if p[0] < ref[0] and p[1] < ref[1]]
    if not pts:
        return 0.0
    xs = sorted({p[0] for p in pts} | {ref[0]})
    ys = sorted({p[1] for p in pts} | {ref[1]})
    area = 0.0
    for x0, x1 in zip(xs, xs[1:]):
        for y0, y1 in zip(ys, ys[1:]):
            if any(p[0] <= x0 and p[1] <= y0 for p in pts):
                area += (x1 - x0) * (y1 - y0)
    return area


# ---- fronts


def test_front_filters_and_sorts():
    f = Front([(2, 1), (1, 2), (2, 2), (1, 2)])
    assert f.points.tolist() == [[1, 2], [2, 1]]


def test_front_is_read_only():
    f = Front([(1, 2)])
    with pytest.raises(ValueError):
        f.points[0, 0] = 5


def test_reference_front_examples():
    assert build_reference_front([Front([(1, 2)]), Front([(2, 1)])]).point_set() == {(1, 2), (2, 1)}
    assert build_reference_front([Front([(1, 1)]), Front([(2, 2)])]).point_set() == {(1, 1)}
    f = Front([(0, 3), (1, 1), (3, 0)])
    assert build_reference_front([f]).point_set() == f.point_set()


def test_normalize_examples():
    ref = Front([(0, 10), (10, 0)])
    assert normalize(Front([(5, 5)]), ref).tolist() == [[0.5, 0.5]]
    n = normalize(ref, ref)
    assert n.min() == 0 and n.max() == 1
    assert normalize(Front([(-5, 5)]), ref)[0, 0] == -0.5


def test_normalize_zero_range():
    assert normalize(Front([(3, 4)]), Front([(3, 4)])).tolist() == [[0, 0]]


# ---- indicators


def test_hypervolume_examples():
    assert hypervolume([(0, 0.5), (0.5, 0)]) == pytest.approx(0.75)
    assert hypervolume([(1, 1)]) == 0
    assert hypervolume([(0, 0)]) == 1


def test_gd_igd_examples():
    assert gd([(0.1, 0.1)], [(0, 0)]) == pytest.approx(math.sqrt(0.02))
    assert igd([(0, 0)], [(0, 0), (1, 1)]) == pytest.approx(math.sqrt(2) / 2)


def test_spread_examples():
    line = [(i / 4, 1 - i / 4) for i in range(5)]
    assert spread(line, line) == pytest.approx(0, abs=1e-12)
    assert spread([(0.5, 0.5)], [(0, 1), (1, 0)]) == pytest.approx(1.0)


def test_epsilon_examples():
    assert epsilon_additive([(0.2, 0.2)], [(0, 0)]) == pytest.approx(0.2)
    assert epsilon_additive([(0, 1), (1, 0)], [(0, 0)]) == pytest.approx(1.0)


def test_indicator_values_self():
    f = Front([(0, 4), (1, 2), (3, 1), (5, 0)])
    vals = indicator_values(f, f)
    assert vals["GD"] == vals["IGD"] == vals["E"] == 0


def test_summaries():
    assert summarize_runs([1, 1, 1]) == (1, 0, 1, 0)
    s = summarize_runs([1, 2, 3, 4])
    assert s.median == 2.5 and s.iqr == pytest.approx(1.5)
    assert s.sd == pytest.approx(np.std([1, 2, 3, 4]))
    assert summarize_runs([5]) == (5, 0, 5, 0)


# ---- properties


@given(point_lists)
def test_mask_matches_pairwise_check(points):
    mask = nondominated_mask(points)
    P = np.array(points)
    for i, p in enumerate(P):
        dominated = any((q <= p).all() and (q < p).any() for q in P)
        if dominated:
            assert not mask[i]
        else:
            # kept unless an earlier identical copy was kept
            first = next(k for k, q in enumerate(P) if (q == p).all())
            assert mask[i] == (i == first)


@given(point_lists)
def test_hypervolume_matches_grid(points):
    assert hypervolume(points) == pytest.approx(grid_hypervolume(points), abs=1e-12)


@given(point_lists, pt)
def test_hypervolume_monotone(points, extra):
    assert hypervolume(points + [extra]) >= hypervolume(points) - 1e-12


@given(point_lists)
def test_self_distances_zero(points):
    f = Front(points)
    assert gd(f, f) == igd(f, f) == epsilon_additive(f, f) == 0


@given(point_lists, point_lists)
def test_indicators_nonnegative(a, b):
    fa, fb = Front(a), Front(b)
    assert gd(fa, fb) >= 0 and igd(fa, fb) >= 0 and spread(fa, fb) >= 0
    assert epsilon_additive(build_reference_front([fa, fb]), fb) <= 1e-12


@given(st.lists(st.floats(-100, 100), min_size=1, max_size=40))
def test_summary_matches_numpy(values):
    s = summarize_runs(values)
    q1, q3 = np.percentile(values, [25, 75])
    assert s.mean == pytest.approx(np.mean(values))
    assert s.iqr == pytest.approx(q3 - q1)
    assert s.sd >= 0
